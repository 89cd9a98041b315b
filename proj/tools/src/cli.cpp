#include "lpmhd_tools/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "lpmhd/error.hpp"
#include "lpmhd/io_config.hpp"
#include "lpmhd/linear_solvers.hpp"
#include "lpmhd/parallel.hpp"
#include "lpmhd/random_fields.hpp"
#include "lpmhd/spectral.hpp"
#include "lpmhd_tools/suites.hpp"

namespace lpmhd::tools {

namespace {

struct Options {
  std::string config_path;
  unsigned threads = 0;
  std::map<std::string, std::string> overrides;

  std::string suite;
  std::string solve_kind;
  std::string input;
  std::string velocity;
  std::string forcing;
  std::string u0_path;
  std::string B0_path;
  std::vector<std::string> files;
  std::optional<double> norm_s;
  std::optional<double> norm_q;
};

RunConfig resolve_config(const Options& opts) {
  RunConfig config = opts.config_path.empty() ? RunConfig{} : parse_config(read_text_file(opts.config_path));
  for (const auto& [key, value] : opts.overrides) set_config_value(config, key, value);
  config.validate();
  return config;
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw InvalidArgument(std::string("missing ") + what);
  if (!std::filesystem::is_regular_file(path)) {
    throw InvalidArgument(std::string(what) + " not found: " + path);
  }
}

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04zu.lpf", i);
  return buf;
}

void write_series(const std::filesystem::path& dir, const TimeSeriesField& series) {
  std::string times = "index,t\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    write_field(dir / snapshot_name(i), series.snapshots[i]);
    times += std::to_string(i) + "," + format_double(series.times[i]) + "\n";
  }
  write_text_file(dir / "times.csv", times);
}

int cmd_verify(const Options& opts, std::ostream& out) {
  const RunConfig config = resolve_config(opts);
  const SuiteResult result = run_suite(opts.suite, config);
  write_text_file(config.output_dir / ("verify_" + opts.suite + ".csv"), estimate_reports_csv(result.reports));
  for (const Check& c : result.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << opts.suite << ": " << c.name << " [" << c.detail << "]\n";
  }
  return result.passed() ? kExitPass : kExitFailure;
}

int cmd_solve(const Options& opts, std::ostream& out) {
  const RunConfig config = resolve_config(opts);
  const IterationConfig& it = config.iteration;
  const FrequencyGrid grid = it.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  require_file(opts.input, "input field");
  const Field f0 = read_field(opts.input, grid);
  const double d = grid.dim();
  const std::filesystem::path dir = config.output_dir / ("solve_" + opts.solve_kind);

  if (opts.solve_kind == "heat") {
    HeatProblem problem{f0, {}, it.T_max, it.dt, it.cadence};
    if (!opts.forcing.empty()) {
      require_file(opts.forcing, "forcing field");
      problem.forcing = constant_in_time(read_field(opts.forcing, grid));
    }
    const TimeSeriesField sol = solve_heat(problem);
    write_series(dir, sol);
    write_text_file(dir / "manifest.json", run_manifest_json("heat", config, sol.horizon()));
    const EstimateReport report =
        heat_estimate_report(sol, problem, kInfinity, 1.0, d / it.p - 1.0, it.p, 1.0, bank);
    write_text_file(dir / "estimate.csv", estimate_reports_csv({report}));
    out << "heat: " << sol.size() << " snapshots, estimate ratio " << format_double(report.ratio) << "\n";
    return kExitPass;
  }
  require_file(opts.velocity, "velocity field");
  TransportProblem problem{f0, constant_in_time(read_field(opts.velocity, grid)), {}, it.T_max, it.dt,
                           it.cadence};
  if (!opts.forcing.empty()) {
    require_file(opts.forcing, "source field");
    problem.source = constant_in_time(read_field(opts.forcing, grid));
  }
  const TimeSeriesField sol = solve_transport(problem);
  write_series(dir, sol);
  write_text_file(dir / "manifest.json", run_manifest_json("transport", config, sol.horizon()));
  const TransportEstimate est = transport_estimate_report(sol, problem, d / it.p - 1.0, it.p, 1.0, bank);
  write_text_file(dir / "estimate.csv", estimate_reports_csv({est.report}));
  const TransportConservation cons = transport_conservation(sol);
  out << "transport: " << sol.size() << " snapshots, minimal constant "
      << format_double(est.minimal_constant) << ", L2 drift " << format_double(cons.l2_relative_drift)
      << "\n";
  return kExitPass;
}

MhdInitialData initial_data(const Options& opts, const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  if (opts.u0_path.empty() != opts.B0_path.empty()) {
    throw InvalidArgument("--u0 and --B0 must be given together");
  }
  if (!opts.u0_path.empty()) {
    require_file(opts.u0_path, "u0 field");
    require_file(opts.B0_path, "B0 field");
    return {read_field(opts.u0_path, grid), read_field(opts.B0_path, grid)};
  }
  return {taylor_green_velocity(grid, config.amplitude), taylor_green_magnetic(grid, config.amplitude)};
}

int cmd_iterate(const Options& opts, std::ostream& out) {
  const RunConfig config = resolve_config(opts);
  const IterationDiagnostics diag = run_iteration(initial_data(opts, config), config.iteration);
  const std::filesystem::path& dir = config.output_dir;
  write_diagnostics(dir, diag);
  write_text_file(dir / "run.cfg", to_config_text(config));
  write_text_file(dir / "manifest.json", run_manifest_json("mhd_iteration", config, diag.horizon.T));
  write_field(dir / "u_final.lpf", diag.final_state.u.snapshots.back());
  write_field(dir / "B_final.lpf", diag.final_state.B.snapshots.back());
  if (diag.final_state.u.size() >= 3) {
    write_text_file(dir / "residual.csv", residual_csv(system_residual(diag.final_state.u, diag.final_state.B)));
  }
  out << "iterate: T = " << format_double(diag.horizon.T) << ", iterates " << diag.records.back().n
      << ", status " << diag.status << ", fitted ratio " << format_double(diag.fit.ratio) << "\n";

  const bool solver_ok = diag.status == "converged" || diag.status == "max_iterations";
  const bool decaying = diag.converged || config.iteration.max_iterations == 0 ||
                        (diag.fit.points >= 2 && diag.fit.ratio < 1.0);
  if (!solver_ok) out << "FAIL solver: " << diag.status << "\n";
  if (!diag.margins_positive()) out << "FAIL uniform bounds: a margin is not positive\n";
  if (!decaying) out << "FAIL successive differences do not decay\n";
  return solver_ok && diag.margins_positive() && decaying ? kExitPass : kExitFailure;
}

int cmd_unique(const Options& opts, std::ostream& out) {
  const RunConfig config = resolve_config(opts);
  const UniquenessReport report =
      twin_run_uniqueness(initial_data(opts, config), config.iteration, config.perturbation);
  write_text_file(config.output_dir / "uniqueness.json", to_json(report));
  out << "unique: perturbation " << format_double(report.perturbation_size) << ", rho(T) "
      << format_double(report.rho.back()) << ", A_T " << format_double(report.A_T) << ", C_T "
      << format_double(report.C_T) << ", verdict " << (report.verdict ? "pass" : "fail") << "\n";
  return report.verdict ? kExitPass : kExitFailure;
}

int cmd_norms(const Options& opts, std::ostream& out) {
  const RunConfig config = resolve_config(opts);
  const IterationConfig& it = config.iteration;
  const FrequencyGrid grid = it.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  const double s = opts.norm_s.value_or(grid.dim() / it.p - 1.0);
  TimeSeriesField series;
  for (std::size_t i = 0; i < opts.files.size(); ++i) {
    require_file(opts.files[i], "field file");
    Field f = read_field(opts.files[i], grid);
    out << opts.files[i] << ": besov(s=" << format_double(s) << ", p=" << format_double(it.p)
        << ", r=" << format_double(config.r) << ") = " << format_double(besov_norm(f, {s, it.p, config.r, {}}, bank))
        << ", L^p = " << format_double(lp_norm(f, it.p)) << "\n";
    series.push_back(static_cast<double>(i) * it.dt * it.cadence, std::move(f));
  }
  if (opts.norm_q) {
    series.validate();
    out << "chemin-lerner(q=" << format_double(*opts.norm_q) << ") = "
        << format_double(chemin_lerner_norm(series, {s, it.p, config.r, opts.norm_q}, bank)) << "\n";
  }
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Littlewood-Paley toolkit and non-resistive MHD iteration", "lpmhd"};
  app.require_subcommand(1, 1);
  Options opts;
  app.add_option("--config", opts.config_path, "Configuration file (key = value)");
  app.add_option("--threads", opts.threads, "Cap on worker threads")->check(CLI::PositiveNumber);
  for (const std::string& key : kConfigKeys) {
    app.add_option_function<std::string>(
        "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
        "Override config key " + key);
  }

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", opts.suite, "bernstein|bony|products|loginterp|heat|transport")
      ->required()
      ->check(CLI::IsMember(kSuiteNames));
  auto* solve = app.add_subcommand("solve", "Solve a heat or transport problem from field files");
  solve->add_option("kind", opts.solve_kind, "heat|transport")->required()->check(CLI::IsMember({"heat", "transport"}));
  solve->add_option("--input", opts.input, "Initial field file");
  solve->add_option("--velocity", opts.velocity, "Velocity field file (transport)");
  solve->add_option("--forcing", opts.forcing, "Time-independent forcing or source field file");
  auto* iterate = app.add_subcommand("iterate", "Run the MHD iteration");
  auto* unique = app.add_subcommand("unique", "Twin-run uniqueness gauge");
  for (auto* sub : {iterate, unique}) {
    sub->add_option("--u0", opts.u0_path, "Velocity initial data file");
    sub->add_option("--B0", opts.B0_path, "Magnetic initial data file");
  }
  auto* norms = app.add_subcommand("norms", "Besov / Chemin-Lerner norms of field files");
  norms->add_option("files", opts.files, "Field files (snapshots in time order)")->required();
  norms->add_option("--s", opts.norm_s, "Regularity index (default d/p - 1)");
  norms->add_option("--q", opts.norm_q, "Time exponent: treat files as a time series");
  for (auto* sub : {verify, solve, iterate, unique, norms}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    CLI::App* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kExitUsage;
  }

  if (opts.threads > 0) set_max_threads(opts.threads);
  try {
    if (verify->parsed()) return cmd_verify(opts, out);
    if (solve->parsed()) return cmd_solve(opts, out);
    if (iterate->parsed()) return cmd_iterate(opts, out);
    if (unique->parsed()) return cmd_unique(opts, out);
    return cmd_norms(opts, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lpmhd::tools
