#pragma once

// Safeguarded Newton iteration for the unique positive zero of H.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stefan/error.hpp"
#include "stefan/model.hpp"
#include "stefan/problem.hpp"

namespace stefan {

struct SolverConfig {
  double step_tol = 1e-15;      // |z_k - z_{k-1}| stopping rule
  double residual_tol = 1e-14;  // |H(z)| <= residual_tol * C f(z) fallback
  std::uint32_t max_iter = 200;
  double bracket_lo_seed = 1e-6;
  double bracket_growth = 2.0;
  bool keep_trace = false;
};

inline void validate_config(const SolverConfig& c) {
  if (!(c.step_tol > 0.0) || !(c.residual_tol > 0.0) || c.max_iter < 1 ||
      !(c.bracket_lo_seed > 0.0) || !(c.bracket_growth > 1.0)) {
    throw Error(ErrorKind::InvalidConfig,
                "solver config requires positive tolerances and seed, max_iter >= 1, growth > 1");
  }
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

enum class StopRule { Step, Residual };

constexpr const char* to_string(StopRule r) { return r == StopRule::Step ? "step" : "residual"; }

struct SolveResult {
  double xi = 0.0;
  std::uint32_t iterations = 0;
  double final_step = 0.0;
  double final_residual = 0.0;
  Bracket bracket;
  bool converged = false;
  StopRule stop_rule = StopRule::Step;
  /// Populated only when SolverConfig::keep_trace is set. One entry per
  /// Newton/bisection update, holding the iterate and the bracket it lies in.
  struct TraceEntry {
    double z;
    double lo;
    double hi;
  };
  std::optional<std::vector<TraceEntry>> trace;
};

/// Largest z searched for a sign change; C f(z) underflows long before.
inline constexpr double kBracketCeiling = 1e4;

/// Returns lo < hi with H(lo) > 0 > H(hi), hi reached by geometric growth.
inline Bracket bracket_root(const StefanProblem& p, const SolverConfig& cfg = {}) {
  require_valid(p);
  validate_config(cfg);
  double lo = cfg.bracket_lo_seed;
  while (!(h_of(p, lo) > 0.0)) {
    lo /= cfg.bracket_growth;
    if (!(lo > std::numeric_limits<double>::min())) {
      throw Error(ErrorKind::BracketNotFound, "H is not positive near z = 0");
    }
  }
  double hi = lo * cfg.bracket_growth;
  while (!(h_of(p, hi) < 0.0)) {
    lo = hi;
    hi *= cfg.bracket_growth;
    if (hi > kBracketCeiling) {
      throw Error(ErrorKind::BracketNotFound,
                  "no sign change of H below z = " + std::to_string(kBracketCeiling));
    }
  }
  return {lo, hi};
}

inline SolveResult solve_xi(const StefanProblem& p, const SolverConfig& cfg = {}) {
  const Bracket initial = bracket_root(p, cfg);
  double lo = initial.lo;
  double hi = initial.hi;

  SolveResult res;
  if (cfg.keep_trace) res.trace.emplace();

  auto shrink = [&](double z, double h) {
    if (h > 0.0) {
      lo = z;
    } else if (h < 0.0) {
      hi = z;
    }
  };

  // A few geometric bisections: f is steep near 0 and raw Newton from the
  // far end of the bracket can overshoot to z <= 0.
  for (int i = 0; i < 5; ++i) {
    const double mid = std::sqrt(lo * hi);
    shrink(mid, h_of(p, mid));
  }
  double z = std::sqrt(lo * hi);

  double last_step = std::numeric_limits<double>::infinity();
  for (std::uint32_t it = 1; it <= cfg.max_iter; ++it) {
    const HSides sides = h_sides(p, z);
    const double h = sides.value();
    const Bracket before{lo, hi};
    shrink(z, h);

    double next = z - h / h_prime(p, z);
    // A Newton correction below half an ulp of z leaves z unchanged.
    const bool stalled = next == z;
    if (!stalled && !(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    // Bracket collapsed to adjacent doubles: no representable progress left.
    const bool collapsed = stalled || !(next > lo && next < hi);
    const double step = collapsed ? 0.0 : std::abs(next - z);

    // The absolute-step rule takes precedence; the scaled residual is the
    // fallback for roots where steps stall just above step_tol.
    if (step < cfg.step_tol) {
      if (collapsed) {
        // z sits on an end of the shrunk bracket; report the one it was inside.
        lo = before.lo;
        hi = before.hi;
      } else {
        z = next;
      }
      if (res.trace) res.trace->push_back({z, lo, hi});
      res.xi = z;
      res.iterations = it;
      res.final_step = step;
      res.final_residual = collapsed ? h : h_of(p, z);
      res.bracket = {lo, hi};
      res.converged = true;
      res.stop_rule = StopRule::Step;
      return res;
    }
    if (std::abs(h) <= cfg.residual_tol * sides.lhs) {
      res.xi = z;
      res.iterations = it - 1;
      res.final_step = last_step;
      res.final_residual = h;
      res.bracket = before;
      res.converged = true;
      res.stop_rule = StopRule::Residual;
      return res;
    }

    last_step = step;
    z = next;
    if (res.trace) res.trace->push_back({z, lo, hi});
  }
  throw Error(ErrorKind::MaxIterationsExceeded,
              "Newton iteration did not converge in " + std::to_string(cfg.max_iter) + " iterations");
}

}  // namespace stefan
