#pragma once

// Closed-form similarity solution
//
//   T(x,t) = t^{alpha/2} [c1 M(-alpha/2, 1/2, -eta^2) + c2 eta M(-alpha/2 + 1/2, 3/2, -eta^2)]
//   s(t)   = 2 a xi sqrt(t),   eta = x / (2 a sqrt(t)),
//
// with c1 = T0 and c2 chosen so that the profile vanishes at eta = xi.

#include <cmath>
#include <numbers>
#include <string>

#include "stefan/error.hpp"
#include "stefan/kummer.hpp"
#include "stefan/problem.hpp"
#include "stefan/solver.hpp"
#include "stefan/special_functions.hpp"

namespace stefan {

struct SimilaritySolution {
  StefanProblem problem;
  double xi = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

enum class Region { Liquid, Interface, Solid };

constexpr const char* to_string(Region r) {
  switch (r) {
    case Region::Liquid: return "liquid";
    case Region::Interface: return "interface";
    case Region::Solid: return "solid";
  }
  return "unknown";
}

/// A field value tagged with the phase it was taken from. Solid points are
/// not evaluated: the solid sits at the phase-change temperature 0.
struct FieldSample {
  double value = 0.0;
  Region region = Region::Liquid;
};

inline SimilaritySolution build_solution(const StefanProblem& p, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw Error(ErrorKind::DegenerateDenominator, "xi must be positive and finite");
  }
  const double alpha = p.alpha();
  const double x2 = xi * xi;
  const double denom = xi * kummer_m(-0.5 * alpha + 0.5, 1.5, -x2).value;
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw Error(ErrorKind::DegenerateDenominator,
                "xi M(-alpha/2+1/2, 3/2, -xi^2) vanishes for xi=" + std::to_string(xi));
  }
  const double c2 = -p.T0 * kummer_m(-0.5 * alpha, 0.5, -x2).value / denom;
  return {p, xi, p.T0, c2};
}

/// Solves for xi and assembles the solution in one call.
inline SimilaritySolution solve(const StefanProblem& p, const SolverConfig& cfg = {}) {
  return build_solution(p, solve_xi(p, cfg).xi);
}

/// The single place where the similarity variable is formed.
inline double similarity_variable(const StefanProblem& p, double x, double t) {
  return x / (2.0 * p.a * std::sqrt(t));
}

inline double front_position(const SimilaritySolution& sol, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidTime, "front_position requires t >= 0");
  return 2.0 * sol.problem.a * sol.xi * std::sqrt(t);
}

inline double front_velocity(const SimilaritySolution& sol, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidTime, "front_velocity requires t > 0");
  return sol.problem.a * sol.xi / std::sqrt(t);
}

/// phi(eta) = c1 M(-alpha/2, 1/2, -eta^2) + c2 eta M(-alpha/2 + 1/2, 3/2, -eta^2).
inline double phi_profile(const SimilaritySolution& sol, double eta) {
  const double alpha = sol.problem.alpha();
  const double e2 = eta * eta;
  return sol.c1 * kummer_m(-0.5 * alpha, 0.5, -e2).value +
         sol.c2 * eta * kummer_m(-0.5 * alpha + 0.5, 1.5, -e2).value;
}

/// d phi / d eta = 2 alpha eta c1 M(-alpha/2+1, 3/2, -eta^2) + c2 M(-alpha/2+1/2, 1/2, -eta^2).
inline double phi_derivative(const SimilaritySolution& sol, double eta) {
  const double alpha = sol.problem.alpha();
  const double e2 = eta * eta;
  const double first = alpha == 0.0 ? 0.0
                                     : 2.0 * alpha * eta * sol.c1 *
                                           kummer_m(-0.5 * alpha + 1.0, 1.5, -e2).value;
  return first + sol.c2 * kummer_m(-0.5 * alpha + 0.5, 0.5, -e2).value;
}

namespace detail {

inline void check_point(double x, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidTime, "field evaluation requires t > 0");
  if (!(x >= 0.0)) throw Error(ErrorKind::NegativePosition, "field evaluation requires x >= 0");
}

inline Region classify(const SimilaritySolution& sol, double x, double t) {
  const double s = front_position(sol, t);
  if (x < s) return Region::Liquid;
  if (x == s) return Region::Interface;
  return Region::Solid;
}

}  // namespace detail

/// Kummer-form temperature without the liquid-region restriction. Used by
/// residual checks whose stencils straddle the interface.
inline double temperature_unclipped(const SimilaritySolution& sol, double x, double t) {
  detail::check_point(x, t);
  const double eta = similarity_variable(sol.problem, x, t);
  return std::pow(t, 0.5 * sol.problem.alpha()) * phi_profile(sol, eta);
}

inline double temperature_gradient_unclipped(const SimilaritySolution& sol, double x, double t) {
  detail::check_point(x, t);
  const double eta = similarity_variable(sol.problem, x, t);
  return std::pow(t, 0.5 * (sol.problem.alpha() - 1.0)) / (2.0 * sol.problem.a) *
         phi_derivative(sol, eta);
}

inline FieldSample temperature(const SimilaritySolution& sol, double x, double t) {
  detail::check_point(x, t);
  const Region r = detail::classify(sol, x, t);
  if (r == Region::Solid) return {0.0, r};
  return {temperature_unclipped(sol, x, t), r};
}

/// T_x = (t^{(alpha-1)/2} / a) [c1 alpha eta M(-alpha/2+1, 3/2, -eta^2) + (c2/2) M(-alpha/2+1/2, 1/2, -eta^2)].
/// At the interface the two terms cancel down to O(e^{-xi^2}); there the
/// Wronskian of the two Kummer branches, -e^{-eta^2}, gives phi'(xi) directly:
/// phi'(xi) = -c1 e^{-xi^2} / (xi M(-alpha/2 + 1/2, 3/2, -xi^2)).
inline FieldSample temperature_gradient(const SimilaritySolution& sol, double x, double t) {
  detail::check_point(x, t);
  const Region r = detail::classify(sol, x, t);
  if (r == Region::Solid) return {0.0, r};
  if (r == Region::Interface) {
    const double alpha = sol.problem.alpha();
    const double x2 = sol.xi * sol.xi;
    const double dphi =
        -sol.c1 * std::exp(-x2) / (sol.xi * kummer_m(-0.5 * alpha + 0.5, 1.5, -x2).value);
    return {std::pow(t, 0.5 * (alpha - 1.0)) / (2.0 * sol.problem.a) * dphi, r};
  }
  return {temperature_gradient_unclipped(sol, x, t), r};
}

/// Elementary form of the temperature when alpha = 1:
/// T = c1 [sqrt(t) e^{-eta^2} + sqrt(pi)/(2a) x erf(eta)] + c2 x / (2a).
inline double closed_form_alpha1(const SimilaritySolution& sol, double x, double t) {
  if (sol.problem.alpha() != 1.0) {
    throw Error(ErrorKind::WrongAlpha,
                "closed_form_alpha1 needs alpha = 1 (got " + std::to_string(sol.problem.alpha()) + ")");
  }
  detail::check_point(x, t);
  const double a = sol.problem.a;
  const double eta = similarity_variable(sol.problem, x, t);
  const double half_sqrt_pi = 0.5 / std::numbers::inv_sqrtpi;
  return sol.c1 * (std::sqrt(t) * std::exp(-eta * eta) + half_sqrt_pi / a * x * stefan::erf(eta)) +
         sol.c2 * x / (2.0 * a);
}

}  // namespace stefan
