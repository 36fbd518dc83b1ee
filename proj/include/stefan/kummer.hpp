#pragma once

// Kummer's confluent hypergeometric function M(a,b,z) = sum (a)_s/((b)_s s!) z^s
// and the Tricomi function U built from it.

#ifdef STEFAN_FORBID_KUMMER_SERIES
#error "this translation unit must not depend on the Kummer series engine"
#endif

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

#include "stefan/error.hpp"
#include "stefan/special_functions.hpp"

namespace stefan {

enum class KummerMethod { DirectSeries, TransformedSeries, LargeZAsymptotic };

constexpr const char* to_string(KummerMethod m) {
  switch (m) {
    case KummerMethod::DirectSeries: return "direct-series";
    case KummerMethod::TransformedSeries: return "transformed-series";
    case KummerMethod::LargeZAsymptotic: return "large-z-asymptotic";
  }
  return "unknown";
}

struct KummerEval {
  double value = 0.0;
  std::uint32_t terms_used = 0;
  bool converged = false;
  KummerMethod method = KummerMethod::DirectSeries;
};

/// log|M| together with the sign of M; used where M itself would overflow.
struct LogMagnitude {
  double log_abs = 0.0;
  int sign = 1;
};

inline constexpr double kSeriesRelTol = 1e-17;
inline constexpr std::uint32_t kSeriesMaxTerms = 500;
/// Above this argument the series is replaced by the large-z expansion.
inline constexpr double kAsymptoticThreshold = 30.0;

namespace detail {

template <class T = double>
struct SeriesSum {
  T value = 0;
  std::uint32_t terms = 0;
  bool converged = false;
};

template <class T>
constexpr T series_rel_tol() {
  if constexpr (std::is_same_v<T, double>) {
    return kSeriesRelTol;
  } else {
    return std::numeric_limits<T>::epsilon() / 16;
  }
}

// Truncate once two consecutive terms are below the relative tolerance.
template <class T = double>
inline SeriesSum<T> direct_series(T a, T b, T z) {
  BasicCompensatedSum<T> sum;
  T term = 1;
  sum.add(term);
  int small_run = 0;
  for (std::uint32_t s = 0; s + 1 < kSeriesMaxTerms; ++s) {
    term *= (a + s) / (b + s) * z / (s + T(1));
    sum.add(term);
    if (std::abs(term) <= series_rel_tol<T>() * std::abs(sum.value())) {
      if (++small_run == 2) return {sum.value(), s + 2, true};
    } else {
      small_run = 0;
    }
  }
  return {sum.value(), kSeriesMaxTerms, false};
}

inline int gamma_sign(double x) noexcept {
  if (x > 0.0) return 1;
  const double n = std::ceil(-x);
  return std::fmod(n, 2.0) == 0.0 ? 1 : -1;
}

struct AsymptoticSum {
  LogMagnitude result;
  std::uint32_t terms = 0;
  bool converged = false;
};

// M(a,b,z) ~ Gamma(b)/Gamma(a) e^z z^{a-b} sum_s (1-a)_s (b-a)_s / (s! z^s),
// z -> +inf, summed up to its smallest term. The exponentially subdominant
// companion is dropped; its relative size is O(e^{-z}).
inline AsymptoticSum large_z_asymptotic(double a, double b, double z) {
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  std::uint32_t terms = 1;
  bool converged = false;
  for (std::uint32_t s = 0; s + 1 < kSeriesMaxTerms; ++s) {
    const double next = term * (1.0 - a + s) * (b - a + s) / ((s + 1.0) * z);
    if (next == 0.0) {
      converged = true;
      break;
    }
    if (std::abs(next) >= std::abs(term)) {
      // Divergence sets in: optimal truncation reached.
      converged = std::abs(term) <= 1e-10 * std::abs(sum.value());
      break;
    }
    term = next;
    sum.add(term);
    ++terms;
    if (std::abs(term) <= kSeriesRelTol * std::abs(sum.value())) {
      converged = true;
      break;
    }
  }
  const double s = sum.value();
  LogMagnitude lm;
  lm.log_abs = std::lgamma(b) - std::lgamma(a) + z + (a - b) * std::log(z) + std::log(std::abs(s));
  lm.sign = gamma_sign(b) * gamma_sign(a) * (s < 0.0 ? -1 : 1);
  return {lm, terms, converged};
}

inline void check_b(double b) {
  if (is_nonpositive_integer(b)) {
    throw Error(ErrorKind::InvalidB,
                "Kummer M undefined for non-positive integer b=" + std::to_string(b));
  }
}

inline void throw_not_converged(double a, double b, double z, std::uint32_t terms) {
  throw Error(ErrorKind::NotConverged, "Kummer M(" + std::to_string(a) + ", " + std::to_string(b) +
                                           ", " + std::to_string(z) + ") not converged after " +
                                           std::to_string(terms) + " terms");
}

// Non-negative argument only. Terminating series are always summed directly.
inline KummerEval eval_nonnegative(double a, double b, double z, KummerMethod series_tag) {
  if (z <= kAsymptoticThreshold || is_nonpositive_integer(a)) {
    const auto s = direct_series(a, b, z);
    if (!s.converged) throw_not_converged(a, b, z, s.terms);
    return {s.value, s.terms, true, series_tag};
  }
  const auto as = large_z_asymptotic(a, b, z);
  if (!as.converged) throw_not_converged(a, b, z, as.terms);
  return {as.result.sign * std::exp(as.result.log_abs), as.terms, true,
          KummerMethod::LargeZAsymptotic};
}

inline LogMagnitude log_nonnegative(double a, double b, double z) {
  if (z <= kAsymptoticThreshold || is_nonpositive_integer(a)) {
    const auto s = direct_series(a, b, z);
    if (!s.converged) throw_not_converged(a, b, z, s.terms);
    return {std::log(std::abs(s.value)), s.value < 0.0 ? -1 : 1};
  }
  const auto as = large_z_asymptotic(a, b, z);
  if (!as.converged) throw_not_converged(a, b, z, as.terms);
  return as.result;
}

}  // namespace detail

/// M(a,b,z). Negative arguments go through M(a,b,z) = e^z M(b-a,b,-z) so the
/// summed series has eventually-positive terms.
inline KummerEval kummer_m(double a, double b, double z) {
  detail::check_b(b);
  if (a == 0.0 || z == 0.0) {
    return {1.0, 1, true, z < 0.0 ? KummerMethod::TransformedSeries : KummerMethod::DirectSeries};
  }
  if (z > 0.0) return detail::eval_nonnegative(a, b, z, KummerMethod::DirectSeries);

  const double w = -z;
  const double inner_a = b - a;
  if (w <= kAsymptoticThreshold || is_nonpositive_integer(inner_a)) {
    const auto s = detail::direct_series(inner_a, b, w);
    if (!s.converged) detail::throw_not_converged(a, b, z, s.terms);
    return {std::exp(z) * s.value, s.terms, true, KummerMethod::TransformedSeries};
  }
  const auto as = detail::large_z_asymptotic(inner_a, b, w);
  if (!as.converged) detail::throw_not_converged(a, b, z, as.terms);
  // e^z cancels e^w in log scale.
  return {as.result.sign * std::exp(z + as.result.log_abs), as.terms, true,
          KummerMethod::TransformedSeries};
}

inline double kummer_value(double a, double b, double z) { return kummer_m(a, b, z).value; }

/// M(a,b,z) carried in long double for ill-conditioned combinations of
/// several M values. Same series and transform as kummer_m; arguments beyond
/// the series range fall back to the double evaluation.
inline long double kummer_m_extended(long double a, long double b, long double z) {
  detail::check_b(static_cast<double>(b));
  if (a == 0 || z == 0) return 1;
  const long double w = std::abs(z);
  const long double sa = z > 0 ? a : b - a;
  if (w > kAsymptoticThreshold && !is_nonpositive_integer(static_cast<double>(sa))) {
    return kummer_m(static_cast<double>(a), static_cast<double>(b), static_cast<double>(z)).value;
  }
  const auto s = detail::direct_series<long double>(sa, b, w);
  if (!s.converged) {
    detail::throw_not_converged(static_cast<double>(a), static_cast<double>(b),
                                static_cast<double>(z), s.terms);
  }
  return z > 0 ? s.value : std::exp(z) * s.value;
}

/// log|M(a,b,z)| and sign, finite even where M overflows a double.
inline LogMagnitude log_kummer_m(double a, double b, double z) {
  detail::check_b(b);
  if (a == 0.0 || z == 0.0) return {0.0, 1};
  if (z > 0.0) return detail::log_nonnegative(a, b, z);
  auto inner = detail::log_nonnegative(b - a, b, -z);
  inner.log_abs += z;
  return inner;
}

/// dM/dz = (a/b) M(a+1, b+1, z).
inline double kummer_m_dz(double a, double b, double z) {
  detail::check_b(b);
  detail::check_b(b + 1.0);
  if (a == 0.0) return 0.0;
  return a / b * kummer_m(a + 1.0, b + 1.0, z).value;
}

/// Tricomi U from the two-Gamma combination of M; non-integer b, z > 0.
inline double kummer_u(double a, double b, double z) {
  if (!(z > 0.0)) {
    throw Error(ErrorKind::NonPositiveArgument, "kummer_u requires z > 0");
  }
  for (double g : {1.0 - b, a - b + 1.0, b - 1.0, a}) {
    if (is_nonpositive_integer(g)) {
      throw Error(ErrorKind::SingularCombination,
                  "kummer_u: Gamma argument " + std::to_string(g) + " is a non-positive integer");
    }
  }
  const double first = gamma_fn(1.0 - b) / gamma_fn(a - b + 1.0) * kummer_m(a, b, z).value;
  const double second = gamma_fn(b - 1.0) / gamma_fn(a) * std::pow(z, 1.0 - b) *
                        kummer_m(a - b + 1.0, 2.0 - b, z).value;
  return first + second;
}

}  // namespace stefan
