#include "lpmhd_tools/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/linear_solvers.hpp"
#include "lpmhd/paraproduct.hpp"
#include "lpmhd/random_fields.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd::tools {

const std::vector<std::string> kSuiteNames = {"bernstein", "bony",  "products",
                                              "loginterp", "heat", "transport"};

bool SuiteResult::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<BernsteinBaseline>& bernstein_baselines() {
  static const std::vector<BernsteinBaseline> baselines = {
      {2.0, 2.0, {1.2, 1.8}, {1.2, 1.8}},
      {2.0, kInfinity, {0.4, 4.0}, {1.2, 1.8}},
  };
  return baselines;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::uint64_t sample_seed(const RunConfig& config, int i) {
  return config.iteration.seed * 1000003ULL + static_cast<std::uint64_t>(i);
}

Field broadband(const FilterBank& bank, Rng& rng) {
  std::uniform_real_distribution<double> slope(0.0, 2.0);
  return random_band_limited(bank.grid(), 1, bank.partition_low(), bank.partition_high(), rng,
                             slope(rng));
}

std::string ratio_span(const std::vector<double>& v) {
  if (v.empty()) return "no samples";
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return "min " + format_double(*lo) + ", median " + format_double(median(v)) + ", max " +
         format_double(*hi);
}

SuiteResult bernstein_suite(const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  SuiteResult result{"bernstein", {}, {}};
  for (const auto& baseline : bernstein_baselines()) {
    std::vector<double> upper, lower;
    bool inside = true;
    for (int i = 0; i < config.samples; ++i) {
      Rng rng(sample_seed(config, i));
      const double lambda = std::ldexp(1.0, 1 + i % 3);
      const Field f = random_band_limited(grid, 1, 0.8 * lambda, 2.6 * lambda, rng);
      const BernsteinReport r =
          bernstein_ratios(f, lambda, 1, baseline.p, baseline.q, SupportKind::Ring);
      upper.push_back(r.upper_ratio);
      lower.push_back(*r.lower_ratio);
      inside = inside && r.upper_ratio >= baseline.upper.low && r.upper_ratio <= baseline.upper.high &&
               *r.lower_ratio >= baseline.lower.low && *r.lower_ratio <= baseline.lower.high;
      const std::vector<std::pair<std::string, double>> indices = {
          {"lambda", lambda}, {"p", baseline.p}, {"q", baseline.q}, {"k", 1}};
      result.reports.push_back(
          make_estimate_report("bernstein_upper", indices, r.upper_ratio, {}, sample_seed(config, i)));
      result.reports.push_back(
          make_estimate_report("bernstein_lower", indices, *r.lower_ratio, {}, sample_seed(config, i)));
    }
    result.checks.push_back({"ring ratios in window (p=" + format_double(baseline.p) +
                                 ", q=" + format_double(baseline.q) + ")",
                             inside, "upper: " + ratio_span(upper) + "; lower: " + ratio_span(lower)});
  }
  return result;
}

SuiteResult bony_suite(const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  SuiteResult result{"bony", {}, {}};
  double worst = 0.0;
  for (int i = 0; i < config.samples; ++i) {
    Rng rng(sample_seed(config, i));
    const Field u = broadband(bank, rng);
    const Field v = broadband(bank, rng);
    const BonyParts parts = bony_decompose(bank, u, v);
    const Field residual = parts.T_uv + parts.T_vu + parts.R_uv - dealiased_product(u, v);
    const double scale = lp_norm(u, 2.0) * lp_norm(v, 2.0);
    const double rel = lp_norm(residual, 2.0) / scale;
    worst = std::max(worst, rel);
    result.reports.push_back(make_estimate_report("bony", {}, lp_norm(residual, 2.0),
                                                  {{"u", lp_norm(u, 2.0)}, {"v", lp_norm(v, 2.0)}},
                                                  sample_seed(config, i)));
  }
  result.checks.push_back({"reconstruction residual <= 1e-10 |u||v|", worst <= 1e-10,
                           "worst relative residual " + format_double(worst)});
  return result;
}

SuiteResult products_suite(const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  const double p = config.iteration.p;
  for (ProductVariant v : {ProductVariant::Paraproduct, ProductVariant::Remainder,
                           ProductVariant::Full, ProductVariant::Mixed}) {
    check_product_indices(v, grid.dim(), config.s1, config.s2, p);
  }
  SuiteResult result{"products", {}, {}};
  for (ProductVariant v : {ProductVariant::Paraproduct, ProductVariant::Remainder,
                           ProductVariant::Full, ProductVariant::Mixed}) {
    std::vector<double> ratios;
    bool finite = true;
    for (int i = 0; i < config.samples; ++i) {
      Rng rng(sample_seed(config, i));
      const Field f = broadband(bank, rng);
      const Field g = broadband(bank, rng);
      EstimateReport r = product_law_ratio(bank, f, g, config.s1, config.s2, p, v, sample_seed(config, i));
      finite = finite && std::isfinite(r.ratio) && !r.degenerate;
      ratios.push_back(r.ratio);
      result.reports.push_back(std::move(r));
    }
    const double spread = *std::max_element(ratios.begin(), ratios.end()) / median(ratios);
    result.checks.push_back({std::string("ratio finite, max/median < 10 (") + std::string(to_string(v)) + ")",
                             finite && spread < 10.0, ratio_span(ratios)});
  }
  return result;
}

SuiteResult loginterp_suite(const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  const double p = config.iteration.p;
  const double s = grid.dim() / p;
  SuiteResult result{"loginterp", {}, {}};
  std::vector<double> ratios;
  bool finite = true;
  for (int i = 0; i < config.samples; ++i) {
    Rng rng(sample_seed(config, i));
    const SpectralField F = to_spectral(broadband(bank, rng));
    TimeSeriesField series;
    for (int k = 0; k <= 10; ++k) series.push_back(0.01 * k, to_physical(heat_semigroup(F, 0.01 * k)));
    EstimateReport r = log_interpolation_ratio(bank, series, s, p, 1.0, 0.5, sample_seed(config, i));
    if (!r.degenerate) {
      finite = finite && std::isfinite(r.ratio);
      ratios.push_back(r.ratio);
    }
    result.reports.push_back(std::move(r));
  }
  result.checks.push_back({"ratio finite on non-degenerate samples", finite, ratio_span(ratios)});
  return result;
}

SuiteResult heat_suite(const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  const double p = config.iteration.p;
  const double d = grid.dim();
  const double dt = config.iteration.dt;
  SuiteResult result{"heat", {}, {}};

  {
    const Field u0 = single_mode(grid, {3, 1, 0});
    const TimeSeriesField sol = solve_heat({u0, {}, 0.1, dt, 1});
    double err = 0.0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
      const Field exact = std::exp(-10.0 * sol.times[i]) * u0;
      err = std::max(err, lp_norm(sol.snapshots[i] - exact, kInfinity));
    }
    result.checks.push_back({"single-mode decay exact to 1e-13", err <= 1e-13,
                             "max error " + format_double(err)});
  }

  std::vector<double> ratios;
  double scale_defect = 0.0;
  bool finite = true;
  for (int i = 0; i < config.samples; ++i) {
    Rng rng(sample_seed(config, i));
    const Field u0 = broadband(bank, rng);
    const Field G = 0.5 * broadband(bank, rng);
    const HeatProblem problem{u0, constant_in_time(G), 0.1, dt, 1};
    const HeatProblem scaled{10.0 * u0, constant_in_time(10.0 * G), 0.1, dt, 1};
    EstimateReport r = heat_estimate_report(solve_heat(problem), problem, kInfinity, 1.0, d / p - 1.0,
                                            p, 1.0, bank);
    const EstimateReport r10 = heat_estimate_report(solve_heat(scaled), scaled, kInfinity, 1.0,
                                                    d / p - 1.0, p, 1.0, bank);
    r.seed = sample_seed(config, i);
    finite = finite && std::isfinite(r.ratio) && !r.degenerate;
    scale_defect = std::max(scale_defect, std::abs(r10.ratio - r.ratio) / r.ratio);
    ratios.push_back(r.ratio);
    result.reports.push_back(std::move(r));
  }
  result.checks.push_back({"estimate ratio finite", finite, ratio_span(ratios)});
  result.checks.push_back({"ratio invariant under u0, G -> 10 u0, 10 G to 1e-12", scale_defect <= 1e-12,
                           "max relative change " + format_double(scale_defect)});
  return result;
}

SuiteResult transport_suite(const RunConfig& config) {
  const FrequencyGrid grid = config.iteration.grid();
  const FilterBank bank = FilterBank::for_grid(grid);
  const double p = config.iteration.p;
  const double dt = config.iteration.dt;
  SuiteResult result{"transport", {}, {}};
  Rng rng(sample_seed(config, 0));

  {
    const Field f0 = random_band_limited(grid, 1, 1.0, 8.0, rng);
    const std::array<double, 2> c{0.3, -0.2};
    const Field v = Field::from_function(grid, 2, [&](const auto&, int comp) { return c[comp]; });
    const TimeSeriesField sol = solve_transport({f0, constant_in_time(v), {}, 1.0, dt, 50});
    double err = 0.0;
    const SpectralField F0 = to_spectral(f0);
    const auto& k = grid.lattice().k;
    for (std::size_t i = 0; i < sol.size(); ++i) {
      SpectralField F = F0;
      for (std::size_t m = 0; m < F.coefficients().size(); ++m) {
        F.coefficients()[m] *= std::polar(1.0, -(k[m][0] * c[0] + k[m][1] * c[1]) * sol.times[i]);
      }
      err = std::max(err, lp_norm(sol.snapshots[i] - to_physical(F), 2.0));
    }
    result.checks.push_back({"constant-velocity translation exact to 1e-9", err <= 1e-9,
                             "max L2 error " + format_double(err)});
  }
  {
    const Field f0 = random_band_limited(grid, 1, 1.0, 4.0, rng);
    const Field v = Field::from_function(grid, 2, [](const auto& x, int comp) {
      return comp == 0 ? std::sin(x[1]) : 0.0;
    });
    const TimeSeriesField sol = solve_transport({f0, constant_in_time(v), {}, 1.0, dt, 50});
    const double drift = transport_conservation(sol).l2_relative_drift;
    result.checks.push_back({"shear advection L2 drift <= 1e-6 over T = 1", drift <= 1e-6,
                             "relative drift " + format_double(drift)});
  }

  std::vector<double> constants;
  bool finite = true;
  const int estimate_samples = std::min(config.samples, 20);
  for (int i = 0; i < estimate_samples; ++i) {
    Rng sample(sample_seed(config, i));
    const Field f0 = broadband(bank, sample);
    const Field v = random_divergence_free(grid, 1.0, 4.0, sample);
    const Field g = 0.1 * broadband(bank, sample);
    const TransportProblem problem{f0, constant_in_time(v), constant_in_time(g), 0.3, 5e-3, 1};
    TransportEstimate est = transport_estimate_report(solve_transport(problem), problem, 1.0, p, 1.0, bank);
    est.report.seed = sample_seed(config, i);
    finite = finite && std::isfinite(est.minimal_constant);
    constants.push_back(est.minimal_constant);
    result.reports.push_back(est.report);
  }
  result.checks.push_back({"minimal transport constant finite", finite, ratio_span(constants)});
  return result;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const RunConfig& config) {
  if (name == "bernstein") return bernstein_suite(config);
  if (name == "bony") return bony_suite(config);
  if (name == "products") return products_suite(config);
  if (name == "loginterp") return loginterp_suite(config);
  if (name == "heat") return heat_suite(config);
  if (name == "transport") return transport_suite(config);
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace lpmhd::tools
