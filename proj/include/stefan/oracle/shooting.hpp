#pragma once

// Kummer-free reference for the interface coefficient: the similarity ODE
//
//   phi'' + 2 eta phi' - 2 alpha phi = 0,   phi(0) = T0,   phi(xi) = 0
//
// is integrated with classical RK4 and xi is located by bisection on the
// Stefan balance. Only problem.hpp and the elementary special functions
// are reachable from here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "stefan/error.hpp"
#include "stefan/problem.hpp"

namespace stefan::oracle {

struct ShootResult {
  double phi_at_xi = 0.0;
  double phi_prime_at_xi = 0.0;
};

namespace detail {

struct State {
  double y = 0.0;   // phi
  double dy = 0.0;  // phi'
};

// One RK4 step of y'' = -2 eta y' + 2 alpha y; h may be negative.
inline State rk4_step(State s, double eta, double h, double alpha) {
  auto rhs = [alpha](double e, const State& st) {
    return State{st.dy, -2.0 * e * st.dy + 2.0 * alpha * st.y};
  };
  const State k1 = rhs(eta, s);
  const State k2 = rhs(eta + 0.5 * h, {s.y + 0.5 * h * k1.y, s.dy + 0.5 * h * k1.dy});
  const State k3 = rhs(eta + 0.5 * h, {s.y + 0.5 * h * k2.y, s.dy + 0.5 * h * k2.dy});
  const State k4 = rhs(eta + h, {s.y + h * k3.y, s.dy + h * k3.dy});
  return {s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          s.dy + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
}

inline State integrate(State s, double from, double to, double alpha, std::uint32_t steps) {
  const double h = (to - from) / steps;
  for (std::uint32_t i = 0; i < steps; ++i) {
    s = rk4_step(s, from + i * h, h, alpha);
  }
  return s;
}

inline void require_steps(std::uint32_t steps) {
  if (steps < 100) throw Error(ErrorKind::InvalidConfig, "shooting needs at least 100 steps");
}

}  // namespace detail

/// Forward superposition from eta = 0: phi = T0 u + d v with
/// u(0)=1, u'(0)=0, v(0)=0, v'(0)=1 and d fixed by phi(xi) = 0.
inline ShootResult ode_shoot(double alpha, double T0, double xi_trial, std::uint32_t steps) {
  detail::require_steps(steps);
  const auto u = detail::integrate({1.0, 0.0}, 0.0, xi_trial, alpha, steps);
  const auto v = detail::integrate({0.0, 1.0}, 0.0, xi_trial, alpha, steps);
  const double d = -T0 * u.y / v.y;
  return {T0 * u.y + d * v.y, T0 * u.dy + d * v.dy};
}

/// Backward shooting from the interface: w(xi) = 0, w'(xi) = 1 integrated
/// down to eta = 0, then phi = T0 w / w(0). Toward eta = 0 the mode that
/// behaves like e^{-eta^2} dominates, so phi'(xi) = T0 / w(0) carries no
/// cancellation even when phi'(xi) is exponentially small.
inline ShootResult shoot_from_interface(double alpha, double T0, double xi_trial,
                                        std::uint32_t steps) {
  detail::require_steps(steps);
  const auto w = detail::integrate({0.0, 1.0}, xi_trial, 0.0, alpha, steps);
  return {0.0, T0 / w.y};
}

/// RK4 step count that keeps the integration error well below 1e-10
/// relative for the growth rates met up to eta = xi.
inline std::uint32_t default_steps(double xi) {
  const double n = 2000.0 * std::max(1.0, xi * xi);
  return static_cast<std::uint32_t>(std::min(n, 2.0e6));
}

/// -k phi'(xi) / (2a) - gamma 2^beta a^{beta+delta+1} xi^{beta+delta+1}.
/// Positive below the interface coefficient, negative above it.
inline double shooting_residual(const StefanProblem& p, double xi) {
  const auto shot = shoot_from_interface(p.alpha(), p.T0, xi, default_steps(xi));
  const double q = p.rhs_exponent();
  return -p.k * shot.phi_prime_at_xi / (2.0 * p.a) -
         p.gamma * std::pow(2.0, p.beta) * std::pow(p.a, q) * std::pow(xi, q);
}

/// Plain bisection on the shooting residual until hi - lo <= xi_tol * hi.
inline double oracle_solve_xi(const StefanProblem& p, double xi_tol = 1e-10) {
  require_valid(p);
  double lo = 1e-6;
  while (!(shooting_residual(p, lo) > 0.0)) {
    lo *= 0.5;
    if (lo < 1e-300) throw Error(ErrorKind::BracketNotFound, "shooting residual not positive near 0");
  }
  double hi = 2.0 * lo;
  while (!(shooting_residual(p, hi) < 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw Error(ErrorKind::BracketNotFound, "shooting residual keeps its sign");
  }
  while (hi - lo > xi_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shooting_residual(p, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace stefan::oracle
