#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lpmhd {

/// Empirical evaluation of an inequality lhs <= C * prod(rhs factors).
/// `ratio` is the smallest C that would make this sample satisfy it.
struct EstimateReport {
  std::string variant;
  std::vector<std::pair<std::string, double>> indices;
  double lhs = 0.0;
  std::vector<std::pair<std::string, double>> rhs_factors;
  double ratio = 0.0;
  /// Set when the product of factors vanishes; ratio is then 0 (for 0/0) or +inf.
  bool degenerate = false;
  std::uint64_t seed = 0;

  double rhs_product() const noexcept;

  /// Columns: variant,indices,lhs,factors,ratio,seed,degenerate. indices and
  /// factors are `name=value` lists joined by ';'.
  static std::string csv_header();
  std::string to_csv_row() const;
};

/// Fills ratio and degenerate from lhs and factors.
EstimateReport make_estimate_report(std::string variant,
                                    std::vector<std::pair<std::string, double>> indices,
                                    double lhs,
                                    std::vector<std::pair<std::string, double>> rhs_factors,
                                    std::uint64_t seed = 0);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace lpmhd
