#pragma once

#include <string>
#include <vector>

#include "lpmhd/estimate_report.hpp"
#include "lpmhd/io_config.hpp"

namespace lpmhd::tools {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<EstimateReport> reports;

  bool passed() const noexcept;
};

extern const std::vector<std::string> kSuiteNames;

struct BernsteinBaseline {
  double p = 2.0;
  double q = 2.0;
  BernsteinWindow upper;
  BernsteinWindow lower;
};

/// Windows for the ring-supported first-order Bernstein ratios.
const std::vector<BernsteinBaseline>& bernstein_baselines();

/// Runs one verification suite over `config.samples` seeded samples. Throws
/// InvalidArgument for an unknown suite and IndexConditionError when the
/// configured indices violate a hypothesis of the tested estimate.
SuiteResult run_suite(const std::string& name, const RunConfig& config);

}  // namespace lpmhd::tools
