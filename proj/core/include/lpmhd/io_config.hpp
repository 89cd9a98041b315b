#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lpmhd/estimate_report.hpp"
#include "lpmhd/mhd_iteration.hpp"

namespace lpmhd {

/// Everything a CLI run needs. Keys of the text format match the member names
/// listed in kConfigKeys.
struct RunConfig {
  IterationConfig iteration;
  std::filesystem::path output_dir = ".";
  double amplitude = 0.05;     // Taylor-Green initial data
  double perturbation = 1e-4;  // uniqueness twin run
  int samples = 100;           // corpus size of the verification suites
  double s1 = 0.5;             // product-law indices
  double s2 = 0.5;
  double r = 1.0;

  /// Numeric bounds of IterationConfig and of the extra knobs, plus
  /// writability of output_dir (checked without creating anything).
  void validate() const;
};

extern const std::vector<std::string> kConfigKeys;

/// Grammar: one `key = value` per line; `#` starts a comment; blank lines are
/// ignored; values are numbers (L also accepts `2pi`) or, for output_dir, a
/// path optionally in double quotes. Throws FormatError with the line number on
/// malformed lines, unknown keys and duplicates.
RunConfig parse_config(const std::string& text);

/// Sets one key from its textual value (used for command-line overrides).
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// parse_config followed by validate().
RunConfig load_config(const std::string& text);
RunConfig load_config_file(const std::filesystem::path& path);

/// Canonical text form (every key, fixed order); parse_config inverts it.
std::string to_config_text(const RunConfig& config);

/// Binary field file: "LPMHD001", u32 d, u32 N, f64 L, u32 components, then
/// components * N^d f64 samples in Field order. Little-endian throughout.
void write_field(const std::filesystem::path& path, const Field& field);
/// Throws FormatError on bad magic or truncation and InvalidArgument when the
/// header disagrees with `expected`.
Field read_field(const std::filesystem::path& path,
                 const std::optional<FrequencyGrid>& expected = std::nullopt);

/// Columns n,T,E0,H1_lhs,H1_rhs,H2_lhs,H2_rhs,D_n; one row per iterate.
std::string diagnostics_csv(const IterationDiagnostics& diagnostics);
/// Sidecar n,wallclock_s (the only nondeterministic output).
std::string wallclock_csv(const IterationDiagnostics& diagnostics);
/// horizon, fit, status and final bounds as JSON.
std::string diagnostics_summary_json(const IterationDiagnostics& diagnostics);
/// Writes diagnostics.csv, diagnostics.wallclock.csv and summary.json into dir.
void write_diagnostics(const std::filesystem::path& dir, const IterationDiagnostics& diagnostics);

std::string estimate_reports_csv(const std::vector<EstimateReport>& reports);

std::string to_json(const UniquenessReport& report);
UniquenessReport uniqueness_report_from_json(const std::string& text);

std::string residual_csv(const SystemResidual& residual);

/// Run manifest: problem type, grid, dt, T, cadence and seed.
std::string run_manifest_json(const std::string& problem, const RunConfig& config, double horizon);

/// Creates parent directories as needed; throws Error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lpmhd
