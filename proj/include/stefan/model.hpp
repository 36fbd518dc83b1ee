#pragma once

// The scalar equation for the interface coefficient:
//
//   H(z) = C f(z) - z^{beta+delta+1},   f(z) = 1 / (z M(alpha/2+1, 3/2, z^2)).
//
// C f is strictly decreasing from +inf to 0 and z^{beta+delta+1} is
// non-decreasing on the valid region, so H has exactly one positive zero.

#include <cmath>

#include "stefan/error.hpp"
#include "stefan/kummer.hpp"
#include "stefan/problem.hpp"

namespace stefan {

namespace detail {
inline void require_positive_z(double z) {
  if (!(z > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "z must be positive");
}
}  // namespace detail

inline double f_of(double alpha, double z) {
  detail::require_positive_z(z);
  const double z2 = z * z;
  if (z2 <= kAsymptoticThreshold) {
    return 1.0 / (z * kummer_m(0.5 * alpha + 1.0, 1.5, z2).value);
  }
  const auto lm = log_kummer_m(0.5 * alpha + 1.0, 1.5, z2);
  return lm.sign * std::exp(-std::log(z) - lm.log_abs);
}

/// f'(z) = -f(z)^2 M(alpha/2+1, 1/2, z^2).
inline double f_prime(double alpha, double z) {
  detail::require_positive_z(z);
  const double z2 = z * z;
  if (z2 <= kAsymptoticThreshold) {
    const double f = f_of(alpha, z);
    return -f * f * kummer_m(0.5 * alpha + 1.0, 0.5, z2).value;
  }
  const auto m32 = log_kummer_m(0.5 * alpha + 1.0, 1.5, z2);
  const auto m12 = log_kummer_m(0.5 * alpha + 1.0, 0.5, z2);
  return -m12.sign * std::exp(m12.log_abs - 2.0 * (std::log(z) + m32.log_abs));
}

/// Both sides of C f(z) = z^{beta+delta+1} at one point.
struct HSides {
  double lhs = 0.0;  // C f(z)
  double rhs = 0.0;  // z^{beta+delta+1}
  double value() const noexcept { return lhs - rhs; }
};

inline HSides h_sides(const StefanProblem& p, double z) {
  return {stefan_coefficient(p) * f_of(p.alpha(), z), std::pow(z, p.rhs_exponent())};
}

inline double h_of(const StefanProblem& p, double z) { return h_sides(p, z).value(); }

inline double h_prime(const StefanProblem& p, double z) {
  const double q = p.rhs_exponent();
  const double rhs_slope = q == 0.0 ? 0.0 : q * std::pow(z, q - 1.0);
  return stefan_coefficient(p) * f_prime(p.alpha(), z) - rhs_slope;
}

}  // namespace stefan
