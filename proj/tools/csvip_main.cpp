// csvip: command-line front end for the CSVIP solvers.
//
//   csvip solve   PROBLEM --algorithm {alternating|sequential|parallel|unrestricted}
//   csvip verify  PROBLEM CANDIDATE
//   csvip trace   RESULT [REFERENCE]
//   csvip compare PROBLEM [--expect-unique]
//
// Exit codes: 0 converged / verified, 1 usage or I/O error, 2 not converged
// (max_iters, stalled, residual above tolerance), 3 diverging.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csvip/diagnostics.hpp"
#include "csvip/error.hpp"
#include "csvip/oracle.hpp"
#include "csvip/problemio.hpp"
#include "csvip/solvers.hpp"

namespace {

using csvip::Vector;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitDiverging = 3;

struct Options {
  std::string problem_path;
  std::string result_path;
  std::string algorithm;
  std::string schedule = "cyclic";
  std::uint64_t seed = 0;
  std::vector<std::size_t> indices;
  std::optional<double> lambda;
  std::vector<double> x0;
  std::vector<double> point;
  std::string out_path;
  std::string format = "json";
  bool expect_unique = false;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

Vector to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

csvip::StopRule stop_defaults() {
  csvip::StopRule rule;
  if (const char* env = std::getenv("CSVIP_MAX_ITERS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) {
      throw std::runtime_error("CSVIP_MAX_ITERS must be a positive integer");
    }
    rule.max_iters = value;
  }
  return rule;
}

csvip::ParsedProblem load_problem(const Options& opts) {
  return csvip::parse_problem(read_file(opts.problem_path), stop_defaults());
}

std::optional<double> chosen_lambda(const Options& opts, const csvip::RunOptions& run) {
  return opts.lambda ? opts.lambda : run.lambda;
}

Vector chosen_start(const Options& opts, const csvip::ParsedProblem& parsed) {
  if (!opts.x0.empty()) return to_vector(opts.x0);
  if (parsed.options.x0) return *parsed.options.x0;
  return csvip::default_start(parsed.problem);
}

int exit_code_for(csvip::RunStatus status) {
  switch (status) {
    case csvip::RunStatus::kConverged: return kExitOk;
    case csvip::RunStatus::kDiverging: return kExitDiverging;
    case csvip::RunStatus::kMaxIters:
    case csvip::RunStatus::kStalled: return kExitNotConverged;
  }
  return kExitNotConverged;
}

csvip::Schedule make_schedule(const Options& opts) {
  if (opts.schedule == "random") return csvip::RandomSchedule{opts.seed};
  if (opts.schedule == "explicit") return csvip::ExplicitSchedule{opts.indices};
  return csvip::CyclicSchedule{};
}

csvip::RunResult run_algorithm(const std::string& algorithm, const Options& opts,
                               const csvip::ParsedProblem& parsed, const csvip::StepSize& step,
                               const Vector& x0) {
  const auto& problem = parsed.problem;
  const auto& stop = parsed.options.stop;
  if (algorithm == "alternating") return csvip::solve_alternating(problem, step, x0, stop);
  if (algorithm == "sequential") return csvip::solve_sequential(problem, step, x0, stop);
  if (algorithm == "parallel") return csvip::solve_parallel(problem, step, x0, stop);
  return csvip::solve_unrestricted(problem, make_schedule(opts), step, x0, stop);
}

int run_solve(const Options& opts) {
  const auto parsed = load_problem(opts);
  if (opts.algorithm == "alternating" && parsed.problem.size() != 2) {
    std::cerr << "csvip: --algorithm alternating needs exactly 2 instances, problem has "
              << parsed.problem.size() << "\n";
    return kExitUsage;
  }
  const auto step = csvip::default_step(parsed.problem, chosen_lambda(opts, parsed.options));
  const Vector x0 = chosen_start(opts, parsed);
  const auto result = run_algorithm(opts.algorithm, opts, parsed, step, x0);
  const auto format =
      opts.format == "csv-trace" ? csvip::ResultFormat::kCsvTrace : csvip::ResultFormat::kJson;
  write_output(csvip::emit_result(result, format), opts.out_path);
  if (!opts.quiet) {
    std::cerr << "csvip: " << opts.algorithm << ": " << csvip::status_name(result.status)
              << " after " << result.iterations() << " iterations, residual "
              << result.trace.residuals.back() << "\n";
  }
  return exit_code_for(result.status);
}

int run_verify(const Options& opts) {
  const auto parsed = load_problem(opts);
  const Vector candidate = to_vector(opts.point);
  if (static_cast<std::size_t>(candidate.size()) != parsed.problem.dim()) {
    std::cerr << "csvip: candidate has dimension " << candidate.size() << ", problem has "
              << parsed.problem.dim() << "\n";
    return kExitUsage;
  }
  const auto step = csvip::default_step(parsed.problem, chosen_lambda(opts, parsed.options));
  const double tol = parsed.options.stop.residual_tol;
  json report;
  report["candidate"] = opts.point;
  report["lambda"] = step.lambda;
  report["residual_tol"] = tol;
  json residuals = json::array();
  bool ok = true;
  for (const auto& t : parsed.problem.step_operators(step)) {
    const double r = csvip::vip_residual(t, candidate);
    residuals.push_back(r);
    ok = ok && r <= tol;
  }
  report["residuals"] = residuals;
  report["ok"] = ok;
  write_output(report.dump(2) + "\n", opts.out_path);
  return ok ? kExitOk : kExitNotConverged;
}

int run_trace(const Options& opts) {
  const auto result = csvip::parse_result(read_file(opts.result_path));
  if (result.trace.empty()) throw csvip::Error(csvip::ErrorCode::kEmptyTrace, "result has no trace");
  const Vector reference = opts.point.empty() ? result.trace.iterates.back() : to_vector(opts.point);
  const auto fejer = csvip::fejer_check(result.trace, reference);
  const auto growth = csvip::divergence_monitor(result.trace);

  json report;
  json violations = json::array();
  for (const auto& v : fejer.violations) violations.push_back({v.iteration, v.magnitude});
  report["fejer"] = {{"reference_point", std::vector<double>(reference.data(),
                                                             reference.data() + reference.size())},
                     {"violations", violations},
                     {"max_violation", fejer.max_violation}};
  report["divergence"] = {{"verdict", csvip::verdict_name(growth.verdict)},
                          {"final_norm", growth.norm_series.back()}};
  write_output(report.dump(2) + "\n", opts.out_path);
  if (growth.verdict == csvip::DivergenceVerdict::kGrowing) return kExitDiverging;
  return fejer.violations.empty() ? kExitOk : kExitNotConverged;
}

struct CompareRow {
  std::string name;
  std::string status;
  std::optional<Vector> point;
};

int run_compare(const Options& opts) {
  const auto parsed = load_problem(opts);
  const auto& problem = parsed.problem;
  const auto step = csvip::default_step(problem, chosen_lambda(opts, parsed.options));
  const Vector x0 = chosen_start(opts, parsed);
  const double tol = parsed.options.stop.residual_tol;

  std::vector<CompareRow> rows;
  bool diverged = false;
  bool unconverged = false;
  std::vector<std::string> algorithms;
  if (problem.size() == 2) algorithms.push_back("alternating");
  algorithms.insert(algorithms.end(), {"sequential", "parallel", "unrestricted"});
  Options cyclic = opts;
  cyclic.schedule = "cyclic";
  for (const auto& name : algorithms) {
    const auto result = run_algorithm(name, cyclic, parsed, step, x0);
    diverged = diverged || result.status == csvip::RunStatus::kDiverging;
    unconverged = unconverged || result.status != csvip::RunStatus::kConverged;
    rows.push_back({name, std::string(csvip::status_name(result.status)), result.solution});
  }
  bool oracle_failed = false;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto& inst = problem.instance(i);
    const double eg_lambda = std::isinf(inst.op.alpha()) ? step.lambda : 0.5 * inst.op.alpha();
    CompareRow row{"extragradient[" + std::to_string(i) + "]", "failed", std::nullopt};
    try {
      const auto oracle =
          csvip::extragradient_solve(inst, eg_lambda, x0, tol, parsed.options.stop.max_iters);
      row.status = "converged";
      row.point = oracle.point;
    } catch (const csvip::Error& e) {
      if (e.code() != csvip::ErrorCode::kNotConverged) throw;
      oracle_failed = true;
    }
    rows.push_back(std::move(row));
  }

  double spread = 0.0;
  std::ostringstream table;
  table << std::setprecision(6);
  table << std::left << std::setw(20) << "method" << std::setw(12) << "status" << "point\n";
  for (const auto& row : rows) {
    table << std::left << std::setw(20) << row.name << std::setw(12) << row.status;
    if (row.point) {
      table << "[";
      for (Eigen::Index j = 0; j < row.point->size(); ++j) {
        table << (j ? ", " : "") << (*row.point)[j];
      }
      table << "]";
    } else {
      table << "-";
    }
    table << "\n";
  }
  table << "\npairwise distances\n" << std::setw(20) << "";
  for (const auto& row : rows) table << std::setw(20) << row.name;
  table << "\n" << std::setprecision(3) << std::scientific;
  for (const auto& a : rows) {
    table << std::setw(20) << a.name;
    for (const auto& b : rows) {
      if (a.point && b.point) {
        const double d = (*a.point - *b.point).norm();
        spread = std::max(spread, d);
        table << std::setw(20) << d;
      } else {
        table << std::setw(20) << "-";
      }
    }
    table << "\n";
  }
  table << "\nmax pairwise distance " << spread << " (limit " << 10.0 * tol << ")\n";
  write_output(table.str(), opts.out_path);

  if (diverged || oracle_failed) return kExitDiverging;
  if (unconverged) return kExitNotConverged;
  if (opts.expect_unique && spread > 10.0 * tol) return kExitNotConverged;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common solutions to variational inequalities: solvers and diagnostics"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_path, "Write output to this file instead of stdout");
    cmd->add_flag("--quiet", opts.quiet, "Suppress progress lines on stderr");
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", opts.lambda, "Step size in (0, 2*alpha)");
    cmd->add_option("--x0", opts.x0, "Starting point, comma separated")->delimiter(',');
  };

  auto* solve = app.add_subcommand("solve", "Run one solver on a problem file");
  solve->add_option("problem", opts.problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--algorithm", opts.algorithm, "Iteration scheme")
      ->required()
      ->check(CLI::IsMember({"alternating", "sequential", "parallel", "unrestricted"}));
  solve->add_option("--schedule", opts.schedule, "Unrestricted-product schedule")
      ->check(CLI::IsMember({"cyclic", "random", "explicit"}));
  solve->add_option("--seed", opts.seed, "Seed for --schedule random");
  solve->add_option("--indices", opts.indices, "Index list for --schedule explicit")->delimiter(',');
  solve->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv-trace"}));
  add_run(solve);
  add_common(solve);

  auto* verify = app.add_subcommand("verify", "Residuals of a candidate point");
  verify->add_option("problem", opts.problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("candidate", opts.point, "Candidate point, comma separated")
      ->required()
      ->delimiter(',');
  verify->add_option("--lambda", opts.lambda, "Step size in (0, 2*alpha)");
  add_common(verify);

  auto* trace = app.add_subcommand("trace", "Fejer and divergence report for a result file");
  trace->add_option("result", opts.result_path, "Result JSON from solve")->required()->check(CLI::ExistingFile);
  trace->add_option("reference", opts.point, "Reference point (default: final iterate)")
      ->delimiter(',');
  add_common(trace);

  auto* compare = app.add_subcommand("compare", "Run every applicable solver and the oracle");
  compare->add_option("problem", opts.problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);
  compare->add_flag("--expect-unique", opts.expect_unique,
                    "Fail unless all methods agree within 10 * residual_tol");
  add_run(compare);
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return run_solve(opts);
    if (*verify) return run_verify(opts);
    if (*trace) return run_trace(opts);
    if (*compare) return run_compare(opts);
  } catch (const csvip::Error& e) {
    std::cerr << "csvip: error [" << csvip::error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "csvip: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
