#pragma once

// Parameters of the one-phase Stefan problem
//
//   a^2 T_xx = T_t,            0 < x < s(t)
//   T(0,t)    = t^{alpha/2} T0
//   T(s(t),t) = 0
//   -k T_x(s(t),t) = L(s, sdot) sdot,   L = gamma s^beta sdot^delta
//   s(0) = 0
//
// with alpha = beta - delta. This header has no dependency on the Kummer
// engine; the verification oracles build on it directly.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stefan/error.hpp"

namespace stefan {

struct StefanProblem {
  double k = 1.0;      // thermal conductivity, W/(m C)
  double a = 1.0;      // square root of the diffusivity a^2, m/s^{1/2}
  double T0 = 1.0;     // fixed-face coefficient, C/s^{alpha/2}
  double gamma = 1.0;  // latent-heat coefficient
  double beta = 0.0;
  double delta = 0.0;

  /// Exponent of the fixed-face temperature; tied to the latent-heat law.
  double alpha() const noexcept { return beta - delta; }

  /// Exponent beta + delta + 1 of the right-hand side z^{beta+delta+1}.
  double rhs_exponent() const noexcept { return beta + delta + 1.0; }

  /// Builds a problem from the diffusivity a^2 as tabulated for materials.
  static StefanProblem from_diffusivity(double k, double a2, double T0, double gamma,
                                        double beta, double delta) {
    return StefanProblem{k, std::sqrt(a2), T0, gamma, beta, delta};
  }
};

struct Violation {
  std::string inequality;
  std::string message;
};

/// Empty result means the problem is inside the region where the similarity
/// solution exists and is unique: beta >= max(delta, -delta - 1).
inline std::vector<Violation> validate(const StefanProblem& p) {
  std::vector<Violation> out;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      out.push_back({std::string(name) + " > 0", std::string(name) + " > 0 fails"});
    }
  };
  positive(p.k, "k");
  positive(p.a, "a");
  positive(p.T0, "T0");
  positive(p.gamma, "gamma");
  if (!std::isfinite(p.beta) || !std::isfinite(p.delta)) {
    out.push_back({"beta, delta finite", "beta and delta must be finite"});
    return out;
  }
  if (!(p.alpha() >= 0.0)) {
    out.push_back({"alpha ≥ 0", "alpha ≥ 0 fails (alpha = beta - delta = " +
                                    std::to_string(p.alpha()) + ")"});
  }
  if (!(p.rhs_exponent() >= 0.0)) {
    out.push_back({"beta + delta + 1 ≥ 0", "beta + delta + 1 ≥ 0 fails (beta + delta + 1 = " +
                                               std::to_string(p.rhs_exponent()) + ")"});
  }
  if (out.empty()) {
    const double scale = std::pow(p.a, p.beta + p.delta + 2.0);
    const double coeff = p.k * p.T0 / (p.gamma * scale * std::pow(2.0, p.beta + 1.0));
    if (!(scale > 0.0) || !std::isfinite(scale) || !(coeff > 0.0) || !std::isfinite(coeff)) {
      out.push_back({"a^(beta+delta+2) representable",
                     "a^(beta+delta+2) or the Stefan coefficient leaves the double range"});
    }
  }
  return out;
}

inline bool is_valid(const StefanProblem& p) { return validate(p).empty(); }

inline void require_valid(const StefanProblem& p) {
  const auto v = validate(p);
  if (!v.empty()) {
    std::string msg;
    for (const auto& e : v) {
      if (!msg.empty()) msg += "; ";
      msg += e.message;
    }
    throw Error(ErrorKind::InvalidProblem, msg);
  }
}

/// L = gamma s^beta sdot^delta.
inline double latent_heat(const StefanProblem& p, double s, double sdot) {
  if (!(s > 0.0) || !(sdot > 0.0)) {
    throw Error(ErrorKind::NonPositiveArgument, "latent_heat requires s > 0 and sdot > 0");
  }
  return p.gamma * std::pow(s, p.beta) * std::pow(sdot, p.delta);
}

/// C = k T0 / (gamma a^{beta+delta+2} 2^{beta+1}).
inline double stefan_coefficient(const StefanProblem& p) {
  return p.k * p.T0 / (p.gamma * std::pow(p.a, p.beta + p.delta + 2.0) * std::pow(2.0, p.beta + 1.0));
}

/// Classical Stefan number k T0 / (gamma a^2).
inline double stefan_number(const StefanProblem& p) { return p.k * p.T0 / (p.gamma * p.a * p.a); }

}  // namespace stefan
