#pragma once

// Special cases with elementary equations for xi.
//   beta = delta = 0:   sqrt(pi) z erf(z) e^{z^2} = Ste          (Neumann)
//   beta = 0, delta = -1:   z e^{z^2} = C  =>  xi = sqrt(W0(2 C^2) / 2)

#include <cmath>
#include <numbers>

#include "stefan/error.hpp"
#include "stefan/special_functions.hpp"

namespace stefan::oracle {

/// Root of the classical Neumann equation by bisection in log form.
inline double neumann_xi(double stefan_number) {
  if (!(stefan_number > 0.0)) {
    throw Error(ErrorKind::NonPositiveArgument, "neumann_xi requires a positive Stefan number");
  }
  const double log_ste = std::log(stefan_number);
  // log(sqrt(pi) z erf(z)) + z^2 is increasing in z.
  auto g = [&](double z) {
    return std::log(z * stefan::erf(z) / std::numbers::inv_sqrtpi) + z * z - log_ste;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 400 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double lambert_xi(double C) {
  if (!(C > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "lambert_xi requires C > 0");
  return std::sqrt(0.5 * lambert_w0(2.0 * C * C));
}

}  // namespace stefan::oracle
