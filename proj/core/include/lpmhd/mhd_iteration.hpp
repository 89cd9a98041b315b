#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpmhd/littlewood_paley.hpp"
#include "lpmhd/time_series.hpp"

namespace lpmhd {

/// Velocity and magnetic initial data, both d-component and divergence free.
struct MhdInitialData {
  Field u0;
  Field B0;

  /// Throws InvalidArgument on shape mismatch, nonzero means or
  /// ||div||_2 > 1e-10 max(1, ||f||_2).
  void validate() const;
};

struct IterationConfig {
  int dim = 2;
  int points_per_axis = 64;
  double box_length = 6.283185307179586;
  double p = 2.0;
  double dt = 2e-3;
  double T_max = 0.5;
  int cadence = 1;
  double eta = 0.1;
  double C0 = 16.0;
  int max_iterations = 12;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  /// Stand-in for the generic constant C of the uniqueness gauge.
  double estimate_constant = 1.0;
  /// Forces the horizon instead of selecting it (must be a multiple of dt).
  std::optional<double> horizon;

  /// Throws InvalidArgument naming the field and the violated bound.
  void validate() const;
  FrequencyGrid grid() const;
};

/// Mesh t_i = i * dt * cadence, closed by T.
std::vector<double> snapshot_times(double T, double dt, int cadence);

/// (S_n u0, S_n B0); n must lie in [j_min, j_max + 1].
MhdInitialData truncate_initial_data(const MhdInitialData& data, int n, const FilterBank& bank);

/// Truncation level used for iterate n (clamped to the top of the band).
int truncation_level(int n, const FilterBank& bank);

struct HorizonSelection {
  double T = 0.0;
  /// Condition value ||e^{tD}u0||_{L~^1_T(B^{d/p+1}_{p,1})} + ||e^{tD}u0||_{L~^2_T(B^{d/p}_{p,1})}.
  double condition = 0.0;
  /// Set when even a single step violates the condition (T = dt is returned).
  bool flagged = false;
};

/// Largest multiple of dt not above T_max for which the free-evolution
/// condition is <= eta^2.
HorizonSelection select_time_horizon(const Field& u0, double eta, double dt, double T_max,
                                     double p, const FilterBank& bank);

struct UniformBounds {
  double H1_lhs = 0.0;
  double H1_rhs = 0.0;
  double H2_lhs = 0.0;
  double H2_rhs = 0.0;

  double H1_margin() const noexcept { return H1_rhs - H1_lhs; }
  double H2_margin() const noexcept { return H2_rhs - H2_lhs; }
};

struct IterationState {
  int n = 0;
  double T = 0.0;
  HorizonSelection horizon;
  double E0 = 0.0;  // ||u0||_{B^{d/p-1}_{p,1}} + ||B0||_{B^{d/p}_{p,1}}
  MhdInitialData data;
  FilterBank bank;
  TimeSeriesField u;
  TimeSeriesField B;
  TimeSeriesField u_prev;  // empty at n = 0
  TimeSeriesField B_prev;
  std::vector<double> U;  // U^n(t_i) = int_0^{t_i} ||u^n||_{B^{d/p+1}_{p,1}}
  UniformBounds bounds;
};

/// n = 0: heat-semigroup evolution of the level-0 truncation on [0, T], with
/// T from select_time_horizon (or config.horizon).
IterationState init_iterate(const MhdInitialData& data, const IterationConfig& config);

/// One step of the scheme: u^{n+1} solves the heat equation with forcing
/// P div(-u^n (x) u^n + B^n (x) B^n); B^{n+1} solves
/// d_t B + u^n . grad B = (B^n . grad) u^n (right-hand side Leray-projected).
IterationState iterate_once(const IterationState& state, const IterationConfig& config);

UniformBounds check_uniform_bounds(const IterationState& state, const IterationConfig& config);

/// D = ||u - u'||_{L~^inf_T(B^{d/p-3/2}_{p,1})} + ||B - B'||_{L~^inf_T(B^{d/p-1}_{p,1})}.
double successive_difference(const IterationState& next, const IterationState& prev, double p);

struct IterationRecord {
  int n = 0;
  double T = 0.0;
  double E0 = 0.0;
  UniformBounds bounds;
  double D = 0.0;  // distance to iterate n - 1; NaN for n = 0
  double max_divergence = 0.0;  // max over snapshots of ||div u||_2 + ||div B||_2
  double wallclock_s = 0.0;
};

struct GeometricFit {
  double ratio = 0.0;  // NaN when fewer than two points are above the floor
  int points = 0;
};

/// Least-squares fit of log D_n against n over values above 1e-13 max D.
GeometricFit fit_geometric_decay(const std::vector<double>& D);

struct IterationDiagnostics {
  std::vector<IterationRecord> records;
  HorizonSelection horizon;
  bool converged = false;
  GeometricFit fit;
  std::string status;  // "converged", "max_iterations" or an error message
  IterationState final_state;

  bool margins_positive() const noexcept;
};

/// Runs the scheme until D_n <= tolerance (D_n = 0 always stops) or
/// max_iterations steps. Solver failures end the run with the error in
/// `status` and the trace so far.
IterationDiagnostics run_iteration(const MhdInitialData& data, const IterationConfig& config);

struct SystemResidual {
  std::vector<double> times;
  std::vector<double> velocity;  // ||d_t u - Du + P[(u.grad)u - (B.grad)B]||_2
  std::vector<double> magnetic;  // ||d_t B + (u.grad)B - (B.grad)u||_2

  double max() const noexcept;
};

/// Residual of the MHD system with time derivatives from second-order finite
/// differences of the snapshots (one-sided at the ends).
SystemResidual system_residual(const TimeSeriesField& u, const TimeSeriesField& B);

struct OsgoodVerdict {
  bool pass = false;
  double worst_margin = 0.0;  // min_t offset + A int rho log(e + C/rho) - rho(t)
};

OsgoodVerdict osgood_check(const std::vector<double>& times, const std::vector<double>& rho,
                           double A_T, double C_T, double offset);

struct UniquenessReport {
  double perturbation_size = 0.0;
  std::uint64_t seed = 0;
  double T = 0.0;
  std::vector<double> times;
  std::vector<double> rho;        // ||du||_{L~^1_t(B^{d/p}_{p,inf})}
  std::vector<double> delta_B;    // ||dB||_{L~^inf_t(B^{d/p-1}_{p,inf})}
  double A_T = 0.0;
  double C_T = 0.0;
  double offset = 0.0;
  /// ||du||_{L~^1_T(B^{d/p}_{p,1})} / (rho(T) log(e + C_T / rho(T))); 0 if rho(T) = 0.
  double bridge_ratio = 0.0;
  double solution_scale = 0.0;  // ||u||_{L~^inf_T(L^2)} of the reference run
  bool verdict = false;
  double worst_margin = 0.0;

  friend bool operator==(const UniquenessReport&, const UniquenessReport&) = default;
};

/// Seeded divergence-free perturbation pair (du0, dB0), each with |k| <= 8 and
/// unit L^2 norm, scaled by `size`.
MhdInitialData uniqueness_perturbation(const FrequencyGrid& grid, double size, std::uint64_t seed);

/// Runs the iteration on data and on data + perturbation over the reference
/// run's horizon and evaluates the Osgood gauge on the final iterates.
UniquenessReport twin_run_uniqueness(const MhdInitialData& data, const IterationConfig& config,
                                     double perturbation_size);

}  // namespace lpmhd
