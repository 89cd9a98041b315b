#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/linear_solvers.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

void TransportProblem::validate() const {
  if (f0.empty()) throw InvalidArgument("transport problem: initial data missing");
  if (!velocity) throw InvalidArgument("transport problem: velocity missing");
  if (!(dt > 0.0)) throw InvalidArgument("transport problem: dt must be positive");
  if (!(horizon >= dt)) throw InvalidArgument("transport problem: horizon must be >= dt");
  if (cadence < 1) throw InvalidArgument("transport problem: cadence must be >= 1");
  if (!f0.all_finite()) throw InvalidArgument("transport problem: initial data not finite");
  if (project && f0.components() != f0.grid().dim()) {
    throw InvalidArgument("transport problem: projection needs a d-component field");
  }
}

namespace {

struct VelocitySample {
  double t = 0.0;
  SpectralField V;
  double max_speed = 0.0;
};

VelocitySample sample_velocity(const TransportProblem& problem, double t) {
  const auto& grid = problem.f0.grid();
  Field v = problem.velocity(t);
  require_same_grid(v.grid(), grid, "solve_transport velocity");
  if (v.components() != grid.dim()) {
    throw InvalidArgument("solve_transport: velocity must have d components");
  }
  if (!v.all_finite()) throw InvalidArgument("solve_transport: velocity not finite");
  const double div = lp_norm(divergence(v), 2.0);
  const double size = lp_norm(v, 2.0);
  if (div > kDivergenceTolerance * std::max(1.0, size)) {
    throw InvalidArgument("solve_transport: velocity is not divergence free (||div v||_2 = " +
                          format_double(div) + " at t = " + format_double(t) + ")");
  }
  return {t, to_spectral(v), lp_norm(v, kInfinity)};
}

}  // namespace

TimeSeriesField solve_transport(const TransportProblem& problem) {
  problem.validate();
  const auto& grid = problem.f0.grid();
  const int comps = problem.f0.components();
  const std::size_t steps =
      static_cast<std::size_t>(std::ceil(problem.horizon / problem.dt - 1e-9));
  const double cfl_scale = grid.points_per_axis() / grid.box_length();

  std::optional<VelocitySample> cached;
  auto velocity_at = [&](double t) -> const VelocitySample& {
    if (!cached || cached->t != t) cached = sample_velocity(problem, t);
    if (problem.dt * cached->max_speed * cfl_scale > kTransportCfl) {
      throw CflError("solve_transport: CFL violated (dt * max|v| * N / L = " +
                         format_double(problem.dt * cached->max_speed * cfl_scale) + " > " +
                         format_double(kTransportCfl) + ")",
                     problem.dt);
    }
    return *cached;
  };
  auto rhs = [&](double t, const SpectralField& F) {
    const VelocitySample& v = velocity_at(t);
    SpectralField out = advective_derivative(v.V, F);
    out *= -1.0;
    if (problem.source) {
      Field g = problem.source(t);
      require_same_grid(g.grid(), grid, "solve_transport source");
      if (g.components() != comps) throw InvalidArgument("solve_transport: source component mismatch");
      out += to_spectral(g);
    }
    if (problem.project) out = leray_project(out);
    return out;
  };

  SpectralField F = to_spectral(problem.f0);
  TimeSeriesField out;
  out.push_back(0.0, problem.f0);
  double t = 0.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_new = n == steps ? problem.horizon : static_cast<double>(n) * problem.dt;
    const double h = t_new - t;
    SpectralField k1 = rhs(t, F);
    SpectralField k2 = rhs(t + 0.5 * h, SpectralField(F).axpy(0.5 * h, k1));
    SpectralField k3 = rhs(t + 0.5 * h, SpectralField(F).axpy(0.5 * h, k2));
    SpectralField k4 = rhs(t_new, SpectralField(F).axpy(h, k3));
    F.axpy(h / 6.0, k1).axpy(h / 3.0, k2).axpy(h / 3.0, k3).axpy(h / 6.0, k4);
    t = t_new;
    if (n % static_cast<std::size_t>(problem.cadence) == 0 || n == steps) {
      Field f = to_physical(F);
      if (!f.all_finite()) throw Error("solve_transport: solution became non-finite");
      out.push_back(t, std::move(f));
    }
  }
  return out;
}

TransportConservation transport_conservation(const TimeSeriesField& solution) {
  solution.validate();
  const Field& f0 = solution.snapshots.front();
  const double l2_0 = lp_norm(f0, 2.0);
  const auto [lo_it, hi_it] = std::minmax_element(f0.samples().begin(), f0.samples().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  TransportConservation out;
  for (const Field& f : solution.snapshots) {
    const double drift = std::abs(lp_norm(f, 2.0) - l2_0);
    out.l2_relative_drift = std::max(out.l2_relative_drift, l2_0 > 0 ? drift / l2_0 : drift);
    for (double x : f.samples()) {
      out.overshoot = std::max({out.overshoot, x - hi, lo - x});
    }
  }
  return out;
}

Field velocity_gradient_field(const Field& v) {
  const int d = v.grid().dim();
  if (v.components() != d) throw InvalidArgument("velocity_gradient_field: need d components");
  const TensorField grad = vector_gradient(v);
  Field out(v.grid(), d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto src = grad(i, j).component(0);
      std::copy(src.begin(), src.end(), out.component(i * d + j).begin());
    }
  }
  return out;
}

namespace {

// Trapezoid integral of values over times, cumulative.
std::vector<double> cumulative_integral(const std::vector<double>& times,
                                        const std::vector<double>& values) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
  }
  return out;
}

std::vector<double> transport_rhs(double C, double f0, const std::vector<double>& times,
                                  const std::vector<double>& V, const std::vector<double>& g) {
  std::vector<double> weighted(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) weighted[i] = std::exp(-C * V[i]) * g[i];
  const std::vector<double> integral = cumulative_integral(times, weighted);
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i] = std::exp(C * V[i]) * (f0 + integral[i]);
  }
  return out;
}

}  // namespace

TransportEstimate transport_estimate_report(const TimeSeriesField& solution,
                                            const TransportProblem& problem, double s, double p,
                                            double r, const FilterBank& bank, double slack) {
  solution.validate();
  BesovSpec{s, p, r, {}}.validate();
  const int d = solution.grid().dim();
  const double low = -d * std::min(1.0 / p, 1.0 - 1.0 / p) - 1.0;
  const double high = 1.0 + d / p;
  const bool endpoint = std::abs(s - high) <= 1e-12 * std::max(1.0, std::abs(high));
  if (!(s > low) || (s >= high && !(endpoint && r == 1.0))) {
    throw InvalidArgument("transport_estimate_report: s = " + format_double(s) +
                          " outside the admissible range (" + format_double(low) + ", " +
                          format_double(high) + "), endpoint allowed only for r = 1");
  }

  const auto& times = solution.times;
  std::vector<double> grad_size(times.size());
  std::vector<double> g_size(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Field grad = velocity_gradient_field(problem.velocity(times[i]));
    grad_size[i] =
        std::max(besov_norm(grad, {d / p, p, r, {}}, bank), lp_norm(grad, kInfinity));
    if (problem.source) g_size[i] = besov_norm(problem.source(times[i]), {s, p, r, {}}, bank);
  }

  TransportEstimate out;
  out.endpoint = endpoint;
  out.V = cumulative_integral(times, grad_size);
  out.lhs = BlockNormTable(solution, p, bank).cumulative_chemin_lerner(s, kInfinity, r);
  const double f0 = besov_norm(solution.snapshots.front(), {s, p, r, {}}, bank);

  auto feasible = [&](double C) {
    const std::vector<double> rhs = transport_rhs(C, f0, times, out.V, g_size);
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (out.lhs[i] > rhs[i] * (1.0 + slack)) return false;
    }
    return true;
  };

  double C = 0.0;
  if (!feasible(0.0)) {
    double hi = 1.0;
    while (!feasible(hi) && hi < 1e8) hi *= 2.0;
    if (!feasible(hi)) {
      C = std::numeric_limits<double>::infinity();
    } else {
      double lo = hi == 1.0 ? 0.0 : hi / 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
      }
      C = hi;
    }
  }
  out.minimal_constant = C;
  out.rhs = std::isfinite(C) ? transport_rhs(C, f0, times, out.V, g_size)
                             : std::vector<double>(times.size(), kInfinity);

  const double g_integral = cumulative_integral(times, g_size).back();
  out.report.variant = "transport";
  out.report.indices = {{"s", s}, {"p", p}, {"r", r}};
  out.report.lhs = *std::max_element(out.lhs.begin(), out.lhs.end());
  out.report.rhs_factors = {{"f0", f0}, {"int_g", g_integral}, {"V_T", out.V.back()}};
  out.report.ratio = C;
  out.report.degenerate = !std::isfinite(C);
  return out;
}

}  // namespace lpmhd
