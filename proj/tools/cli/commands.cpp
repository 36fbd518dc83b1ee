#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace stefan::cli {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON has no NaN; unavailable numbers become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string join_violations(const std::vector<Violation>& vs) {
  std::string msg;
  for (const auto& v : vs) {
    if (!msg.empty()) msg += "; ";
    msg += v.message;
  }
  return msg;
}

double sweep_value(const SweepSpec& spec, int i) {
  if (i == spec.count - 1) return spec.hi;
  return spec.lo + (spec.hi - spec.lo) * i / (spec.count - 1);
}

SweepRow solve_point(const PhysicalParams& params, double T0, const SolverConfig& cfg) {
  const StefanProblem p = params.problem(T0);
  SweepRow row;
  row.beta = params.beta;
  row.delta = params.delta;
  row.alpha = p.alpha();
  row.T0 = T0;
  row.xi = std::nan("");
  row.residual = std::nan("");
  if (!is_valid(p)) {
    row.status = "invalid";
    return row;
  }
  try {
    const auto r = solve_xi(p, cfg);
    row.xi = r.xi;
    row.iterations = r.iterations;
    row.residual = r.final_residual;
    row.status = "ok";
  } catch (const Error& e) {
    row.status = e.kind() == ErrorKind::MaxIterationsExceeded ? "not_converged" : "error";
  }
  return row;
}

struct CommonOptions {
  PhysicalParams params;
  std::vector<double> T0{};
  double step_tol = 1e-15;
  unsigned max_iter = 200;
  std::string out;
  int workers = 1;

  SolverConfig solver_config() const {
    SolverConfig c;
    c.step_tol = step_tol;
    c.max_iter = max_iter;
    return c;
  }
};

std::ostream* open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return &fallback;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) return nullptr;
  return &file;
}

int single_T0(const CommonOptions& o, double& T0, std::ostream& err) {
  if (o.T0.size() > 1) {
    err << "error: this command takes a single --T0\n";
    return kInvalidParameters;
  }
  T0 = o.T0.empty() ? 1.0 : o.T0.front();
  return kOk;
}

int validate_or_report(const StefanProblem& p, std::ostream& err) {
  const auto v = validate(p);
  if (v.empty()) return kOk;
  err << "invalid parameters: " << join_violations(v) << "\n";
  return kInvalidParameters;
}

int cmd_solve(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  double T0 = 0.0;
  if (int rc = single_T0(o, T0, err); rc != kOk) return rc;
  const StefanProblem p = o.params.problem(T0);
  if (int rc = validate_or_report(p, err); rc != kOk) return rc;
  try {
    const auto r = solve_xi(p, o.solver_config());
    const auto sol = build_solution(p, r.xi);
    json j;
    j["xi"] = r.xi;
    j["c2"] = sol.c2;
    j["iterations"] = r.iterations;
    j["residual"] = r.final_residual;
    j["final_step"] = number_or_null(r.final_step);
    j["stop_rule"] = to_string(r.stop_rule);
    j["alpha"] = p.alpha();
    out << j.dump() << "\n";
    return kOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::MaxIterationsExceeded ? kNotConverged : kInvalidParameters;
  }
}

int cmd_sweep(const CommonOptions& o, SweepSpec spec, std::ostream& out, std::ostream& err) {
  spec.base = o.params;
  if (!o.T0.empty()) spec.T0_list = o.T0;
  spec.out_path = o.out;
  try {
    check_sweep_spec(spec);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kInvalidParameters;
  }
  const auto rows = run_sweep(spec, o.solver_config(), o.workers);
  std::ofstream file;
  std::ostream* os = open_output(spec.out_path, file, out);
  if (os == nullptr) {
    err << "cannot open " << spec.out_path << " for writing\n";
    return kIoError;
  }
  write_sweep_csv(*os, rows);
  os->flush();
  if (!*os) {
    err << "write failed: " << spec.out_path << "\n";
    return kIoError;
  }
  return kOk;
}

int cmd_eval(const CommonOptions& o, const std::vector<double>& times, int nx, int solid_points,
             std::ostream& out, std::ostream& err) {
  double T0 = 0.0;
  if (int rc = single_T0(o, T0, err); rc != kOk) return rc;
  const StefanProblem p = o.params.problem(T0);
  if (int rc = validate_or_report(p, err); rc != kOk) return rc;
  std::vector<EvalRow> rows;
  try {
    const auto sol = build_solution(p, solve_xi(p, o.solver_config()).xi);
    rows = evaluate_grid(sol, times, nx, solid_points);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::MaxIterationsExceeded ? kNotConverged : kInvalidParameters;
  }
  std::ofstream file;
  std::ostream* os = open_output(o.out, file, out);
  if (os == nullptr) {
    err << "cannot open " << o.out << " for writing\n";
    return kIoError;
  }
  write_eval_csv(*os, rows);
  os->flush();
  return *os ? kOk : kIoError;
}

int cmd_verify(const CommonOptions& o, std::optional<double> xi_override, std::ostream& out,
               std::ostream& err) {
  double T0 = 0.0;
  if (int rc = single_T0(o, T0, err); rc != kOk) return rc;
  const StefanProblem p = o.params.problem(T0);
  if (int rc = validate_or_report(p, err); rc != kOk) return rc;
  const auto rep = oracle::verify(p, o.solver_config(), xi_override);
  std::ofstream file;
  std::ostream* os = open_output(o.out, file, out);
  if (os == nullptr) {
    err << "cannot open " << o.out << " for writing\n";
    return kIoError;
  }
  *os << report_to_json(rep) << "\n";
  os->flush();
  if (!*os) return kIoError;
  if (!rep.passed) {
    for (const auto& f : rep.identity_failures) {
      err << "check failed: " << f.name << (f.detail.empty() ? "" : " (" + f.detail + ")") << "\n";
    }
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace

void check_sweep_spec(const SweepSpec& spec) {
  if (!(spec.lo < spec.hi)) throw Error(ErrorKind::InvalidConfig, "sweep requires lo < hi");
  if (spec.count < 2) throw Error(ErrorKind::InvalidConfig, "sweep requires count >= 2");
  if (spec.param != SweepParam::T0 && spec.T0_list.empty()) {
    throw Error(ErrorKind::InvalidConfig, "sweep requires at least one T0");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SolverConfig& cfg, int workers) {
  check_sweep_spec(spec);
  struct Point {
    PhysicalParams params;
    double T0;
  };
  std::vector<Point> points;
  for (int i = 0; i < spec.count; ++i) {
    const double v = sweep_value(spec, i);
    PhysicalParams params = spec.base;
    if (spec.param == SweepParam::Beta) params.beta = v;
    if (spec.param == SweepParam::Delta) params.delta = v;
    if (spec.param == SweepParam::T0) {
      points.push_back({params, v});
      continue;
    }
    std::vector<double> t0s = spec.T0_list;
    std::sort(t0s.begin(), t0s.end());
    for (double T0 : t0s) points.push_back({params, T0});
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = solve_point(points[i].params, points[i].T0, cfg);
    }
  };
  const int n = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(1, points.size())));
  std::vector<std::jthread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "beta,delta,alpha,T0,xi,iterations,residual,status\n";
  for (const auto& r : rows) {
    os << format_double(r.beta) << ',' << format_double(r.delta) << ',' << format_double(r.alpha)
       << ',' << format_double(r.T0) << ',' << format_double(r.xi) << ',' << r.iterations << ','
       << format_double(r.residual) << ',' << r.status << '\n';
  }
}

std::vector<EvalRow> evaluate_grid(const SimilaritySolution& sol, const std::vector<double>& times,
                                   int nx, int solid_points) {
  if (nx < 2 || solid_points < 0) {
    throw Error(ErrorKind::InvalidConfig, "eval grid needs nx >= 2 and solid_points >= 0");
  }
  std::vector<EvalRow> rows;
  for (double t : times) {
    const double s = front_position(sol, t);
    const int intervals = nx - 1;
    for (int j = 0; j < nx + solid_points; ++j) {
      // j == intervals lands exactly on s(t).
      const double x = j == intervals ? s : s * j / intervals;
      const auto sample = temperature(sol, x, t);
      rows.push_back({t, x, similarity_variable(sol.problem, x, t), sample.value, sample.region});
    }
  }
  return rows;
}

void write_eval_csv(std::ostream& os, const std::vector<EvalRow>& rows) {
  os << "t,x,eta,temperature,region\n";
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.x) << ',' << format_double(r.eta) << ','
       << format_double(r.temperature) << ',' << to_string(r.region) << '\n';
  }
}

std::string report_to_json(const oracle::VerifyReport& rep, int indent) {
  json j;
  j["xi_solver"] = number_or_null(rep.xi_solver);
  j["xi_oracle"] = number_or_null(rep.xi_oracle);
  j["xi_discrepancy"] = number_or_null(rep.xi_discrepancy);
  j["bc_residuals"] = {{"fixed_face", number_or_null(rep.bc_residuals.fixed_face)},
                       {"interface", number_or_null(rep.bc_residuals.interface)}};
  j["stefan_residual_rel"] = number_or_null(rep.stefan_residual_rel);
  j["pde_residual_order"] = number_or_null(rep.pde_residual_order);
  j["identity_failures"] = json::array();
  for (const auto& f : rep.identity_failures) {
    j["identity_failures"].push_back({{"name", f.name},
                                      {"error", number_or_null(f.error)},
                                      {"tolerance", number_or_null(f.tolerance)},
                                      {"detail", f.detail}});
  }
  j["passed"] = rep.passed;
  return j.dump(indent);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Similarity solutions of the one-phase Stefan problem with latent heat "
               "L = gamma s^beta sdot^delta"};
  app.require_subcommand(1);

  CommonOptions o;
  app.add_option("--k", o.params.k, "thermal conductivity [W/(m C)]")->capture_default_str();
  app.add_option("--a2", o.params.a2, "diffusivity a^2 [m^2/s]")->capture_default_str();
  app.add_option("--gamma", o.params.gamma, "latent-heat coefficient")->capture_default_str();
  app.add_option("--T0", o.T0, "fixed-face coefficient; repeatable for sweep");
  app.add_option("--beta", o.params.beta, "position exponent of the latent heat")->capture_default_str();
  app.add_option("--delta", o.params.delta, "velocity exponent of the latent heat")->capture_default_str();
  app.add_option("--step-tol", o.step_tol, "Newton absolute step tolerance")->capture_default_str();
  app.add_option("--max-iter", o.max_iter, "Newton iteration cap")->capture_default_str();
  app.add_option("--out", o.out, "output file (default: standard output)");
  app.add_option("--workers", o.workers, "sweep worker threads")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "solve for xi and print a JSON line");
  auto* sweep = app.add_subcommand("sweep", "tabulate xi over beta, delta or T0 as CSV");
  auto* eval = app.add_subcommand("eval", "tabulate the temperature field as CSV");
  auto* ver = app.add_subcommand("verify", "cross-check the solution and write a JSON report");
  for (auto* sub : {solve, sweep, eval, ver}) sub->fallthrough();

  SweepSpec spec;
  std::string param = "delta";
  sweep->add_option("--param", param, "swept parameter")
      ->check(CLI::IsMember({"beta", "delta", "T0"}))
      ->capture_default_str();
  sweep->add_option("--lo", spec.lo, "sweep start")->capture_default_str();
  sweep->add_option("--hi", spec.hi, "sweep end")->capture_default_str();
  sweep->add_option("--count", spec.count, "number of samples")->capture_default_str();

  std::vector<double> times{1.0};
  int nx = 11;
  int solid_points = 2;
  eval->add_option("--t", times, "evaluation times; repeatable");
  eval->add_option("--nx", nx, "points from x=0 to x=s(t) inclusive")->capture_default_str();
  eval->add_option("--solid-points", solid_points, "extra points beyond the front")
      ->capture_default_str();

  std::optional<double> xi_override;
  ver->add_option("--xi-override", xi_override, "replace the solver root (fault injection)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidParameters;
  }

  if (o.workers < 1) {
    err << "--workers must be >= 1\n";
    return kInvalidParameters;
  }
  try {
    validate_config(o.solver_config());
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kInvalidParameters;
  }

  try {
    if (*solve) return cmd_solve(o, out, err);
    if (*sweep) {
      spec.param = param == "beta" ? SweepParam::Beta : param == "T0" ? SweepParam::T0 : SweepParam::Delta;
      return cmd_sweep(o, spec, out, err);
    }
    if (*eval) return cmd_eval(o, times, nx, solid_points, out, err);
    if (*ver) return cmd_verify(o, xi_override, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  }
  return kInvalidParameters;
}

}  // namespace stefan::cli
