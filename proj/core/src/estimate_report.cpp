#include "lpmhd/estimate_report.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace lpmhd {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double EstimateReport::rhs_product() const noexcept {
  double prod = 1.0;
  for (const auto& [name, value] : rhs_factors) prod *= value;
  return prod;
}

std::string EstimateReport::csv_header() {
  return "variant,indices,lhs,factors,ratio,seed,degenerate";
}

std::string EstimateReport::to_csv_row() const {
  auto join = [](const std::vector<std::pair<std::string, double>>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ';';
      out += items[i].first + "=" + format_double(items[i].second);
    }
    return out;
  };
  return variant + "," + join(indices) + "," + format_double(lhs) + "," + join(rhs_factors) + "," +
         format_double(ratio) + "," + std::to_string(seed) + "," + (degenerate ? "1" : "0");
}

EstimateReport make_estimate_report(std::string variant,
                                    std::vector<std::pair<std::string, double>> indices,
                                    double lhs,
                                    std::vector<std::pair<std::string, double>> rhs_factors,
                                    std::uint64_t seed) {
  EstimateReport r;
  r.variant = std::move(variant);
  r.indices = std::move(indices);
  r.lhs = lhs;
  r.rhs_factors = std::move(rhs_factors);
  r.seed = seed;
  const double prod = r.rhs_product();
  if (prod > 0.0) {
    r.ratio = lhs / prod;
  } else {
    r.degenerate = true;
    r.ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return r;
}

}  // namespace lpmhd
