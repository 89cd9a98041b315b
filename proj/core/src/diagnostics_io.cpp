#include <cmath>
#include <limits>

#include "json.hpp"

#include "lpmhd/error.hpp"
#include "lpmhd/io_config.hpp"

namespace lpmhd {

namespace {

using nlohmann::ordered_json;

// JSON has no NaN or infinity; those are written as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from(const ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw FormatError("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

ordered_json numbers(const std::vector<double>& values) {
  ordered_json out = ordered_json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

std::vector<double> numbers_from(const ordered_json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number_from(v));
  return out;
}

}  // namespace

std::string diagnostics_csv(const IterationDiagnostics& diagnostics) {
  std::string out = "n,T,E0,H1_lhs,H1_rhs,H2_lhs,H2_rhs,D_n\n";
  for (const auto& r : diagnostics.records) {
    out += std::to_string(r.n) + "," + format_double(r.T) + "," + format_double(r.E0) + "," +
           format_double(r.bounds.H1_lhs) + "," + format_double(r.bounds.H1_rhs) + "," +
           format_double(r.bounds.H2_lhs) + "," + format_double(r.bounds.H2_rhs) + "," +
           format_double(r.D) + "\n";
  }
  return out;
}

std::string wallclock_csv(const IterationDiagnostics& diagnostics) {
  std::string out = "n,wallclock_s\n";
  for (const auto& r : diagnostics.records) {
    out += std::to_string(r.n) + "," + format_double(r.wallclock_s) + "\n";
  }
  return out;
}

std::string diagnostics_summary_json(const IterationDiagnostics& d) {
  ordered_json j;
  j["status"] = d.status;
  j["converged"] = d.converged;
  j["iterations"] = d.records.empty() ? 0 : d.records.back().n;
  j["horizon"] = {{"T", number(d.horizon.T)},
                  {"condition", number(d.horizon.condition)},
                  {"flagged", d.horizon.flagged}};
  j["geometric_fit"] = {{"ratio", number(d.fit.ratio)}, {"points", d.fit.points}};
  j["margins_positive"] = d.margins_positive();
  double divergence = 0.0;
  for (const auto& r : d.records) divergence = std::max(divergence, r.max_divergence);
  j["max_divergence"] = number(divergence);
  return j.dump(2) + "\n";
}

void write_diagnostics(const std::filesystem::path& dir, const IterationDiagnostics& diagnostics) {
  write_text_file(dir / "diagnostics.csv", diagnostics_csv(diagnostics));
  write_text_file(dir / "diagnostics.wallclock.csv", wallclock_csv(diagnostics));
  write_text_file(dir / "summary.json", diagnostics_summary_json(diagnostics));
}

std::string estimate_reports_csv(const std::vector<EstimateReport>& reports) {
  std::string out = EstimateReport::csv_header() + "\n";
  for (const auto& r : reports) out += r.to_csv_row() + "\n";
  return out;
}

std::string residual_csv(const SystemResidual& residual) {
  std::string out = "t,velocity,magnetic\n";
  for (std::size_t i = 0; i < residual.times.size(); ++i) {
    out += format_double(residual.times[i]) + "," + format_double(residual.velocity[i]) + "," +
           format_double(residual.magnetic[i]) + "\n";
  }
  return out;
}

std::string run_manifest_json(const std::string& problem, const RunConfig& config, double horizon) {
  const IterationConfig& it = config.iteration;
  ordered_json j;
  j["problem"] = problem;
  j["grid"] = {{"d", it.dim}, {"N", it.points_per_axis}, {"L", number(it.box_length)}};
  j["p"] = number(it.p);
  j["dt"] = number(it.dt);
  j["T"] = number(horizon);
  j["cadence"] = it.cadence;
  j["seed"] = it.seed;
  return j.dump(2) + "\n";
}

std::string to_json(const UniquenessReport& r) {
  ordered_json j;
  j["perturbation_size"] = number(r.perturbation_size);
  j["seed"] = r.seed;
  j["T"] = number(r.T);
  j["times"] = numbers(r.times);
  j["rho"] = numbers(r.rho);
  j["delta_B"] = numbers(r.delta_B);
  j["A_T"] = number(r.A_T);
  j["C_T"] = number(r.C_T);
  j["offset"] = number(r.offset);
  j["bridge_ratio"] = number(r.bridge_ratio);
  j["solution_scale"] = number(r.solution_scale);
  j["verdict"] = r.verdict ? "pass" : "fail";
  j["worst_margin"] = number(r.worst_margin);
  return j.dump(2) + "\n";
}

UniquenessReport uniqueness_report_from_json(const std::string& text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    UniquenessReport r;
    r.perturbation_size = number_from(j.at("perturbation_size"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.T = number_from(j.at("T"));
    r.times = numbers_from(j.at("times"));
    r.rho = numbers_from(j.at("rho"));
    r.delta_B = numbers_from(j.at("delta_B"));
    r.A_T = number_from(j.at("A_T"));
    r.C_T = number_from(j.at("C_T"));
    r.offset = number_from(j.at("offset"));
    r.bridge_ratio = number_from(j.at("bridge_ratio"));
    r.solution_scale = number_from(j.at("solution_scale"));
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "pass" && verdict != "fail") throw FormatError("verdict must be pass or fail");
    r.verdict = verdict == "pass";
    r.worst_margin = number_from(j.at("worst_margin"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("uniqueness report: ") + e.what());
  }
}

}  // namespace lpmhd
