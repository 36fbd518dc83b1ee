#pragma once

// Command-line front end: solve | sweep | eval | verify.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stefan/stefan.hpp"

namespace stefan::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidParameters = 2,
  kNotConverged = 3,
  kIoError = 4,
};

/// Physical defaults: liquid water, unit latent-heat coefficient.
struct PhysicalParams {
  double k = 0.58;
  double a2 = 1.39e-7;
  double gamma = 1.0;
  double beta = 0.0;
  double delta = 0.0;

  StefanProblem problem(double T0) const {
    return StefanProblem::from_diffusivity(k, a2, T0, gamma, beta, delta);
  }
};

enum class SweepParam { Beta, Delta, T0 };

struct SweepSpec {
  PhysicalParams base;
  std::vector<double> T0_list{1.0, 5.0, 10.0};
  SweepParam param = SweepParam::Delta;
  double lo = -1.0;
  double hi = 1.0;
  int count = 41;
  std::string out_path;
};

struct SweepRow {
  double beta = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double T0 = 0.0;
  double xi = 0.0;
  unsigned iterations = 0;
  double residual = 0.0;
  std::string status;  // ok | invalid | not_converged | error
};

/// Formats with 17 significant digits so values re-parse bit-exactly.
std::string format_double(double v);

/// Throws stefan::Error(InvalidConfig) when lo >= hi or count < 2.
void check_sweep_spec(const SweepSpec& spec);

/// One row per (sample, T0), ordered by swept value then T0. Points are
/// solved on up to `workers` threads; the output order does not depend on it.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SolverConfig& cfg, int workers);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct EvalRow {
  double t = 0.0;
  double x = 0.0;
  double eta = 0.0;
  double temperature = 0.0;
  Region region = Region::Liquid;
};

/// `nx` points from x = 0 to x = s(t) inclusive, then `solid_points` more at
/// the same spacing beyond the front, for each t.
std::vector<EvalRow> evaluate_grid(const SimilaritySolution& sol, const std::vector<double>& times,
                                   int nx, int solid_points);

void write_eval_csv(std::ostream& os, const std::vector<EvalRow>& rows);

/// VerifyReport as JSON text with snake_case keys mirroring the struct.
std::string report_to_json(const oracle::VerifyReport& rep, int indent = 2);

/// Full CLI entry point; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stefan::cli
