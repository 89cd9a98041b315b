#include "lpmhd/mhd_iteration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "lpmhd/error.hpp"
#include "lpmhd/estimate_report.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/linear_solvers.hpp"
#include "lpmhd/parallel.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

namespace {

constexpr double kDataDivergenceTolerance = 1e-10;

double divergence_size(const Field& f) { return lp_norm(divergence(f), 2.0); }

std::vector<double> cumulative_trapezoid(const std::vector<double>& times,
                                         const std::vector<double>& values) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
  }
  return out;
}

std::vector<double> besov_path(const TimeSeriesField& series, double s, double p,
                               const FilterBank& bank) {
  const BlockNormTable table(series, p, bank);
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table.besov(i, s, 1.0);
  return out;
}

double max_divergence(const IterationState& state) {
  double worst = 0.0;
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    worst = std::max(worst,
                     divergence_size(state.u.snapshots[i]) + divergence_size(state.B.snapshots[i]));
  }
  return worst;
}

}  // namespace

void MhdInitialData::validate() const {
  if (u0.empty() || B0.empty()) throw InvalidArgument("initial data: u0 and B0 are required");
  require_same_grid(u0.grid(), B0.grid(), "initial data");
  const int d = u0.grid().dim();
  if (u0.components() != d || B0.components() != d) {
    throw InvalidArgument("initial data: u0 and B0 must have d components");
  }
  if (!u0.all_finite() || !B0.all_finite()) throw InvalidArgument("initial data: not finite");
  for (const Field* f : {&u0, &B0}) {
    const char* name = f == &u0 ? "u0" : "B0";
    const double scale = std::max(1.0, lp_norm(*f, 2.0));
    if (divergence_size(*f) > kDataDivergenceTolerance * scale) {
      throw InvalidArgument(std::string("initial data: ") + name + " is not divergence free");
    }
    for (double m : mean(*f)) {
      if (std::abs(m) > kDataDivergenceTolerance * scale) {
        throw InvalidArgument(std::string("initial data: ") + name + " has a nonzero mean");
      }
    }
  }
}

void IterationConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& bound) {
    throw InvalidArgument("config: " + field + " " + bound);
  };
  if (dim != 2 && dim != 3) fail("dim", "must be 2 or 3 (got " + std::to_string(dim) + ")");
  if (points_per_axis < 8 || (points_per_axis & (points_per_axis - 1)) != 0) {
    fail("N", "must be a power of two >= 8 (got " + std::to_string(points_per_axis) + ")");
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) fail("L", "must be positive");
  if (!(p >= 1.0 && p <= 2.0 * dim)) {
    fail("p", "must lie in [1, 2d] = [1, " + std::to_string(2 * dim) + "] (got " +
                  format_double(p) + "); well-posedness holds only in this range");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt", "must be positive");
  if (!(T_max >= dt) || !std::isfinite(T_max)) fail("T_max", "must be >= dt");
  if (cadence < 1) fail("cadence", "must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) fail("eta", "must lie in (0, 1) (got " + format_double(eta) + ")");
  if (!(C0 > 1.0) || !std::isfinite(C0)) fail("C0", "must be > 1 (got " + format_double(C0) + ")");
  if (max_iterations < 0) fail("max_iterations", "must be >= 0");
  if (!(tolerance >= 0.0)) fail("tolerance", "must be >= 0");
  if (!(estimate_constant > 0.0) || !std::isfinite(estimate_constant)) {
    fail("estimate_constant", "must be positive");
  }
  if (horizon) {
    const double steps = *horizon / dt;
    if (!(*horizon >= dt) || std::abs(steps - std::round(steps)) > 1e-9 * steps) {
      fail("horizon", "must be a positive multiple of dt");
    }
  }
}

FrequencyGrid IterationConfig::grid() const { return make_grid(dim, points_per_axis, box_length); }

std::vector<double> snapshot_times(double T, double dt, int cadence) {
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  std::vector<double> times{0.0};
  for (std::size_t n = 1; n <= steps; ++n) {
    if (n == steps) {
      times.push_back(T);
    } else if (n % static_cast<std::size_t>(cadence) == 0) {
      times.push_back(static_cast<double>(n) * dt);
    }
  }
  return times;
}

int truncation_level(int n, const FilterBank& bank) {
  return std::clamp(n, bank.j_min(), bank.j_max() + 1);
}

MhdInitialData truncate_initial_data(const MhdInitialData& data, int n, const FilterBank& bank) {
  if (n < bank.j_min() || n > bank.j_max() + 1) {
    throw InvalidArgument("truncate_initial_data: level " + std::to_string(n) + " outside [" +
                          std::to_string(bank.j_min()) + ", " + std::to_string(bank.j_max() + 1) +
                          "]");
  }
  return {bank.low_pass(n, data.u0), bank.low_pass(n, data.B0)};
}

HorizonSelection select_time_horizon(const Field& u0, double eta, double dt, double T_max,
                                     double p, const FilterBank& bank) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("select_time_horizon: eta must lie in (0, 1)");
  if (!(dt > 0.0) || !(T_max >= dt)) throw InvalidArgument("select_time_horizon: need 0 < dt <= T_max");
  const auto steps = static_cast<std::size_t>(std::floor(T_max / dt + 1e-9));
  const double d = u0.grid().dim();
  const SpectralField U0 = to_spectral(u0);
  TimeSeriesField free;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    free.push_back(t, to_physical(heat_semigroup(U0, t)));
  }
  const BlockNormTable table(free, p, bank);
  const std::vector<double> l1 = table.cumulative_chemin_lerner(d / p + 1.0, 1.0, 1.0);
  const std::vector<double> l2 = table.cumulative_chemin_lerner(d / p, 2.0, 1.0);
  auto condition = [&](std::size_t i) { return l1[i] + l2[i]; };
  const double bound = eta * eta;

  HorizonSelection out;
  if (condition(1) > bound) {
    out.T = dt;
    out.condition = condition(1);
    out.flagged = true;
    return out;
  }
  std::size_t lo = 1;
  std::size_t hi = steps;
  if (condition(hi) <= bound) {
    lo = hi;
  } else {
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (condition(mid) <= bound ? lo : hi) = mid;
    }
  }
  out.T = free.times[lo];
  out.condition = condition(lo);
  return out;
}

UniformBounds check_uniform_bounds(const IterationState& state, const IterationConfig& config) {
  const double d = state.u.grid().dim();
  const double p = config.p;
  const BlockNormTable u(state.u, p, state.bank);
  const BlockNormTable B(state.B, p, state.bank);
  UniformBounds out;
  out.H1_lhs = u.chemin_lerner(d / p - 1.0, kInfinity, 1.0) + B.chemin_lerner(d / p, kInfinity, 1.0);
  out.H1_rhs = config.C0 * state.E0;
  out.H2_lhs = u.chemin_lerner(d / p + 1.0, 1.0, 1.0) + u.chemin_lerner(d / p, 2.0, 1.0);
  out.H2_rhs = config.eta;
  return out;
}

namespace {

void finish_state(IterationState& state, const IterationConfig& config) {
  const double d = state.u.grid().dim();
  state.U = cumulative_trapezoid(state.u.times,
                                 besov_path(state.u, d / config.p + 1.0, config.p, state.bank));
  state.bounds = check_uniform_bounds(state, config);
}

}  // namespace

IterationState init_iterate(const MhdInitialData& data, const IterationConfig& config) {
  config.validate();
  data.validate();
  require_same_grid(data.u0.grid(), config.grid(), "init_iterate");

  IterationState state;
  state.data = data;
  state.bank = FilterBank::for_grid(data.u0.grid());
  const double d = config.dim;
  const double p = config.p;
  state.E0 = besov_norm(data.u0, {d / p - 1.0, p, 1.0, {}}, state.bank) +
             besov_norm(data.B0, {d / p, p, 1.0, {}}, state.bank);
  if (config.horizon) {
    state.horizon.T = *config.horizon;
  } else {
    state.horizon = select_time_horizon(data.u0, config.eta, config.dt, config.T_max, p, state.bank);
  }
  state.T = state.horizon.T;

  const MhdInitialData level0 = truncate_initial_data(data, truncation_level(0, state.bank), state.bank);
  const SpectralField U0 = to_spectral(level0.u0);
  const SpectralField B0 = to_spectral(level0.B0);
  for (double t : snapshot_times(state.T, config.dt, config.cadence)) {
    state.u.push_back(t, to_physical(heat_semigroup(U0, t)));
    state.B.push_back(t, to_physical(heat_semigroup(B0, t)));
  }
  finish_state(state, config);
  return state;
}

IterationState iterate_once(const IterationState& state, const IterationConfig& config) {
  config.validate();
  const int next_n = state.n + 1;
  const MhdInitialData data =
      truncate_initial_data(state.data, truncation_level(next_n, state.bank), state.bank);

  const std::size_t count = state.u.size();
  TimeSeriesField forcing;
  TimeSeriesField source;
  forcing.times = source.times = state.u.times;
  forcing.snapshots.resize(count);
  source.snapshots.resize(count);
  parallel_for(count, [&](std::size_t i) {
    const Field& u = state.u.snapshots[i];
    const Field& B = state.B.snapshots[i];
    forcing.snapshots[i] = leray_project(tensor_divergence(B, B) - tensor_divergence(u, u));
    source.snapshots[i] = tensor_divergence(u, B);
  });

  HeatProblem heat{data.u0, interpolate(forcing), state.T, config.dt, config.cadence};
  TransportProblem transport{data.B0,       interpolate(state.u), interpolate(source),
                             state.T,       config.dt,            config.cadence,
                             /*project=*/true};

  IterationState next;
  next.n = next_n;
  next.T = state.T;
  next.horizon = state.horizon;
  next.E0 = state.E0;
  next.data = state.data;
  next.bank = state.bank;
  next.u_prev = state.u;
  next.B_prev = state.B;
  parallel_for(2, [&](std::size_t task) {
    if (task == 0) {
      next.u = solve_heat(heat);
    } else {
      next.B = solve_transport(transport);
    }
  });
  finish_state(next, config);
  return next;
}

double successive_difference(const IterationState& next, const IterationState& prev, double p) {
  const double d = next.u.grid().dim();
  const BlockNormTable du(difference(next.u, prev.u), p, next.bank);
  const BlockNormTable dB(difference(next.B, prev.B), p, next.bank);
  return du.chemin_lerner(d / p - 1.5, kInfinity, 1.0) + dB.chemin_lerner(d / p - 1.0, kInfinity, 1.0);
}

GeometricFit fit_geometric_decay(const std::vector<double>& D) {
  double largest = 0.0;
  for (double v : D) {
    if (std::isfinite(v)) largest = std::max(largest, v);
  }
  const double floor = 1e-13 * largest;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t n = 0; n < D.size(); ++n) {
    if (!std::isfinite(D[n]) || !(D[n] > floor)) continue;
    const double x = static_cast<double>(n);
    const double y = std::log(D[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  GeometricFit fit;
  fit.points = m;
  if (m < 2) {
    fit.ratio = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.ratio = std::exp(slope);
  return fit;
}

bool IterationDiagnostics::margins_positive() const noexcept {
  return std::all_of(records.begin(), records.end(), [](const IterationRecord& r) {
    return r.bounds.H1_margin() > 0.0 && r.bounds.H2_margin() > 0.0;
  });
}

IterationDiagnostics run_iteration(const MhdInitialData& data, const IterationConfig& config) {
  using Clock = std::chrono::steady_clock;
  config.validate();
  data.validate();
  IterationDiagnostics out;

  auto record = [&](const IterationState& s, double D, Clock::time_point start) {
    IterationRecord r;
    r.n = s.n;
    r.T = s.T;
    r.E0 = s.E0;
    r.bounds = s.bounds;
    r.D = D;
    r.max_divergence = max_divergence(s);
    r.wallclock_s = std::chrono::duration<double>(Clock::now() - start).count();
    out.records.push_back(r);
  };

  auto start = Clock::now();
  IterationState state = init_iterate(data, config);
  out.horizon = state.horizon;
  record(state, std::numeric_limits<double>::quiet_NaN(), start);

  out.status = "max_iterations";
  for (int k = 0; k < config.max_iterations; ++k) {
    start = Clock::now();
    try {
      IterationState next = iterate_once(state, config);
      const double D = successive_difference(next, state, config.p);
      state = std::move(next);
      record(state, D, start);
      if (D <= config.tolerance) {
        out.converged = true;
        out.status = "converged";
        break;
      }
    } catch (const InvalidArgument&) {
      throw;
    } catch (const Error& e) {
      out.status = e.what();
      break;
    }
  }
  std::vector<double> D;
  for (const auto& r : out.records) D.push_back(r.D);
  out.fit = fit_geometric_decay(D);
  out.final_state = std::move(state);
  return out;
}

double SystemResidual::max() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < velocity.size(); ++i) worst = std::max({worst, velocity[i], magnetic[i]});
  return worst;
}

namespace {

Field laplacian(const Field& f) {
  SpectralField F = to_spectral(f);
  const auto& ksq = f.grid().lattice().k_squared;
  for (int c = 0; c < F.components(); ++c) {
    auto comp = F.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= -ksq[i];
  }
  return to_physical(F);
}

Field time_derivative(const TimeSeriesField& s, std::size_t i) {
  const auto& t = s.times;
  const auto& f = s.snapshots;
  const std::size_t last = t.size() - 1;
  Field out(f[i].grid(), f[i].components());
  auto combine = [&](std::size_t a, double wa, std::size_t b, double wb, std::size_t c, double wc) {
    out.axpy(wa, f[a]).axpy(wb, f[b]).axpy(wc, f[c]);
  };
  if (i == 0) {
    const double h1 = t[1] - t[0], h2 = t[2] - t[1];
    combine(0, -(2 * h1 + h2) / (h1 * (h1 + h2)), 1, (h1 + h2) / (h1 * h2), 2,
            -h1 / (h2 * (h1 + h2)));
  } else if (i == last) {
    const double h1 = t[last - 1] - t[last - 2], h2 = t[last] - t[last - 1];
    combine(last - 2, h2 / (h1 * (h1 + h2)), last - 1, -(h1 + h2) / (h1 * h2), last,
            (h1 + 2 * h2) / (h2 * (h1 + h2)));
  } else {
    const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
    combine(i - 1, -h2 / (h1 * (h1 + h2)), i, (h2 - h1) / (h1 * h2), i + 1, h1 / (h2 * (h1 + h2)));
  }
  return out;
}

}  // namespace

SystemResidual system_residual(const TimeSeriesField& u, const TimeSeriesField& B) {
  u.validate();
  B.validate();
  if (u.times != B.times) throw InvalidArgument("system_residual: u and B meshes differ");
  if (u.size() < 3) throw InvalidArgument("system_residual: need at least three snapshots");
  SystemResidual out;
  out.times = u.times;
  out.velocity.resize(u.size());
  out.magnetic.resize(u.size());
  parallel_for(u.size(), [&](std::size_t i) {
    const Field& ui = u.snapshots[i];
    const Field& Bi = B.snapshots[i];
    Field ru = time_derivative(u, i) - laplacian(ui) +
               leray_project(tensor_divergence(ui, ui) - tensor_divergence(Bi, Bi));
    Field rB = time_derivative(B, i) + tensor_divergence(Bi, ui) - tensor_divergence(ui, Bi);
    out.velocity[i] = lp_norm(ru, 2.0);
    out.magnetic[i] = lp_norm(rB, 2.0);
  });
  return out;
}

}  // namespace lpmhd
