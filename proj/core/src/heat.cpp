#include <cmath>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/linear_solvers.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

namespace {

std::size_t step_count(double horizon, double dt) {
  return static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
}

}  // namespace

void HeatProblem::validate() const {
  if (u0.empty()) throw InvalidArgument("heat problem: initial data missing");
  if (!(dt > 0.0)) throw InvalidArgument("heat problem: dt must be positive");
  if (!(horizon >= dt)) throw InvalidArgument("heat problem: horizon must be >= dt");
  if (cadence < 1) throw InvalidArgument("heat problem: cadence must be >= 1");
  if (!u0.all_finite()) throw InvalidArgument("heat problem: initial data not finite");
}

std::pair<double, double> etd2_weights(double lambda, double h) {
  const double z = lambda * h;
  if (z < 1.0) {
    // Series of ((1-e^{-z}) - z e^{-z})/z^2 and (z - (1-e^{-z}))/z^2.
    double w_old = 0.0;
    double w_new = 0.0;
    double power = 1.0;      // (-z)^m
    double factorial = 2.0;  // (m+2)!
    for (int m = 0; m < 30; ++m) {
      w_old += power * (m + 1) / factorial;
      w_new += power / factorial;
      power *= -z;
      factorial *= (m + 3);
    }
    return {h * w_old, h * w_new};
  }
  const double E = std::exp(-z);
  const double one_minus = -std::expm1(-z);
  return {h * (one_minus - z * E) / (z * z), h * (z - one_minus) / (z * z)};
}

TimeSeriesField solve_heat(const HeatProblem& problem) {
  problem.validate();
  const auto& grid = problem.u0.grid();
  const auto& ksq = grid.lattice().k_squared;
  const int comps = problem.u0.components();
  const std::size_t steps = step_count(problem.horizon, problem.dt);

  SpectralField U = to_spectral(problem.u0);
  auto forcing_at = [&](double t) -> std::optional<SpectralField> {
    if (!problem.forcing) return std::nullopt;
    Field g = problem.forcing(t);
    require_same_grid(g.grid(), grid, "solve_heat forcing");
    if (g.components() != comps) throw InvalidArgument("solve_heat: forcing component mismatch");
    return to_spectral(g);
  };

  TimeSeriesField out;
  out.push_back(0.0, problem.u0);
  std::optional<SpectralField> g_old = forcing_at(0.0);
  double t = 0.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_new = n == steps ? problem.horizon : static_cast<double>(n) * problem.dt;
    const double h = t_new - t;
    std::optional<SpectralField> g_new = forcing_at(t_new);
    for (int c = 0; c < comps; ++c) {
      auto u = U.component(c);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double E = std::exp(-ksq[i] * h);
        u[i] *= E;
        if (g_old) {
          const auto [w_old, w_new] = etd2_weights(ksq[i], h);
          u[i] += w_old * g_old->component(c)[i] + w_new * g_new->component(c)[i];
        }
      }
    }
    t = t_new;
    g_old = std::move(g_new);
    if (n % static_cast<std::size_t>(problem.cadence) == 0 || n == steps) {
      out.push_back(t, to_physical(U));
    }
  }
  return out;
}

EstimateReport heat_estimate_report(const TimeSeriesField& solution, const HeatProblem& problem,
                                    double q, double q1, double s, double p, double r,
                                    const FilterBank& bank) {
  if (!(q1 <= q)) throw InvalidArgument("heat_estimate_report: requires q1 <= q");
  if (!(q1 >= 1.0)) throw InvalidArgument("heat_estimate_report: requires q1 >= 1");
  const double two_over_q = std::isinf(q) ? 0.0 : 2.0 / q;
  const double two_over_q1 = std::isinf(q1) ? 0.0 : 2.0 / q1;
  const double lhs = BlockNormTable(solution, p, bank).chemin_lerner(s + two_over_q, q, r);
  const double data = besov_norm(problem.u0, {s, p, r, {}}, bank);
  double forcing = 0.0;
  if (problem.forcing) {
    TimeSeriesField g;
    for (double t : solution.times) g.push_back(t, problem.forcing(t));
    forcing = BlockNormTable(g, p, bank).chemin_lerner(s - 2.0 + two_over_q1, q1, r);
  }
  return make_estimate_report("heat",
                              {{"q", q}, {"q1", q1}, {"s", s}, {"p", p}, {"r", r}},
                              lhs, {{"u0+G", data + forcing}});
}

}  // namespace lpmhd
