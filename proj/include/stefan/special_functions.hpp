#pragma once

// Elementary special functions shared by the Kummer engine and the
// verification oracles. Nothing in this header touches hypergeometric
// series, so the oracles may include it freely.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "stefan/error.hpp"

namespace stefan {

/// Neumaier's variant of Kahan summation. Error-free transform of each
/// addition, so the accumulated rounding stays O(eps) independent of the
/// number of terms as long as no single term dominates by more than 1/eps.
template <class T>
class BasicCompensatedSum {
 public:
  void add(T x) noexcept {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  T value() const noexcept { return sum_ + comp_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

inline bool is_nonpositive_integer(double x) noexcept {
  return x <= 0.0 && std::floor(x) == x;
}

/// Rising factorial a(a+1)...(a+s-1); (a)_0 = 1.
inline double pochhammer(double a, std::uint32_t s) noexcept {
  double p = 1.0;
  for (std::uint32_t i = 0; i < s; ++i) {
    p *= a + static_cast<double>(i);
  }
  return p;
}

inline double erf(double z) noexcept { return std::erf(z); }
inline double erfc(double z) noexcept { return std::erfc(z); }

/// Stability window of the forward recurrence used by inerfc.
inline constexpr int kInerfcMaxOrder = 20;
inline constexpr double kInerfcMaxAbsArg = 6.0;

/// n-fold repeated integral of erfc, i^n erfc(z) = int_z^inf i^{n-1}erfc(t) dt.
/// Forward recurrence 2n i^n = i^{n-2} - 2z i^{n-1} seeded with
/// i^{-1}erfc(z) = (2/sqrt(pi)) e^{-z^2} and i^0 erfc = erfc.
inline double inerfc(int n, double z) {
  if (n < 0 || n > kInerfcMaxOrder || !(std::abs(z) <= kInerfcMaxAbsArg)) {
    throw Error(ErrorKind::OutOfStabilityWindow,
                "inerfc requires 0 <= n <= 20 and |z| <= 6 (got n=" + std::to_string(n) +
                    ", z=" + std::to_string(z) + ")");
  }
  double prev = 2.0 * std::numbers::inv_sqrtpi * std::exp(-z * z);
  double cur = std::erfc(z);
  for (int k = 1; k <= n; ++k) {
    const double next = (prev - 2.0 * z * cur) / (2.0 * k);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Gamma function with explicit pole detection.
inline double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw Error(ErrorKind::PoleAtNonPositiveInteger,
                "gamma pole at x=" + std::to_string(x));
  }
  return std::tgamma(x);
}

/// Principal branch W0 of the Lambert W function, w*e^w = x, x >= -1/e.
inline double lambert_w0(double x) {
  constexpr double inv_e = 1.0 / std::numbers::e;
  if (std::isnan(x) || x < -inv_e) {
    // Allow the branch point itself to be hit through rounding of -1/e.
    if (!(x >= -inv_e * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))) {
      throw Error(ErrorKind::BelowBranchPoint,
                  "lambert_w0 requires x >= -1/e (got " + std::to_string(x) + ")");
    }
    return -1.0;
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.25) {
    // Series about the branch point in p = sqrt(2(e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  } else if (x < 3.0) {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  if (w == -1.0) return w;

  // Halley iteration.
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double r = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = r / (ew * wp1 - (w + 2.0) * r / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

}  // namespace stefan
