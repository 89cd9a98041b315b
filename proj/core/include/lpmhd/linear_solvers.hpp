#pragma once

#include <optional>
#include <vector>

#include "lpmhd/estimate_report.hpp"
#include "lpmhd/littlewood_paley.hpp"
#include "lpmhd/time_series.hpp"

namespace lpmhd {

/// d_t u - Delta u = G, u(0) = u0 on [0, horizon].
struct HeatProblem {
  Field u0;
  TimeFunction forcing;  // empty means G = 0
  double horizon = 0.0;
  double dt = 0.0;
  int cadence = 1;  // store every cadence-th step (the final time is always stored)

  void validate() const;
};

/// Exponential integrator: each mode is advanced exactly through the linear
/// part, and the Duhamel integral of a linearly interpolated forcing is done
/// in closed form (exponential trapezoid, second order).
TimeSeriesField solve_heat(const HeatProblem& problem);

/// Weights (w_old, w_new) of the exponential trapezoid rule for decay rate
/// lambda >= 0 over a step h: int_0^h e^{-lambda(h-s)} G(s) ds ~ w_old G(0) + w_new G(h).
std::pair<double, double> etd2_weights(double lambda, double h);

/// Empirical form of the parabolic estimate
///   ||u||_{L~^q_T(B^{s+2/q}_{p,r})} <= C (||u0||_{B^s_{p,r}} + ||G||_{L~^{q1}_T(B^{s-2+2/q1}_{p,r})}).
/// Requires q1 <= q. Forcing is sampled at the solution's times.
EstimateReport heat_estimate_report(const TimeSeriesField& solution, const HeatProblem& problem,
                                    double q, double q1, double s, double p, double r,
                                    const FilterBank& bank);

/// d_t f + v . grad f = g, f(0) = f0, with div v = 0.
struct TransportProblem {
  Field f0;
  TimeFunction velocity;
  TimeFunction source;  // empty means g = 0
  double horizon = 0.0;
  double dt = 0.0;
  int cadence = 1;
  bool project = false;  // Leray-project the right-hand side at every stage (vector f)

  void validate() const;
};

/// Pseudo-spectral classical RK4 with dealiased advection. Throws CflError when
/// dt * max|v| * N / L exceeds 0.5 and InvalidArgument when div v is not small.
TimeSeriesField solve_transport(const TransportProblem& problem);

inline constexpr double kTransportCfl = 0.5;
inline constexpr double kDivergenceTolerance = 1e-8;

struct TransportConservation {
  double l2_relative_drift = 0.0;  // max_t | ||f(t)||_2 - ||f0||_2 | / ||f0||_2
  double overshoot = 0.0;          // max excursion above max f0 or below min f0
};

TransportConservation transport_conservation(const TimeSeriesField& solution);

struct TransportEstimate {
  EstimateReport report;        // ratio holds the minimal constant C
  double minimal_constant = 0;  // smallest C >= 0 with lhs <= rhs(C) at every snapshot
  bool endpoint = false;        // s = 1 + d/p with r = 1
  std::vector<double> V;        // int_0^t ||grad v||_{B^{d/p}_{p,r} cap L^inf}
  std::vector<double> lhs;      // ||f||_{L~^inf_t(B^s_{p,r})}
  std::vector<double> rhs;      // e^{CV(t)}(||f0|| + int_0^t e^{-CV}||g||) at the minimal C
};

/// Throws InvalidArgument if s lies outside (-d min(1/p, 1-1/p) - 1, 1 + d/p)
/// (the endpoint s = 1 + d/p is admitted when r = 1). `slack` is a relative
/// tolerance on the inequality absorbing quadrature error.
TransportEstimate transport_estimate_report(const TimeSeriesField& solution,
                                            const TransportProblem& problem, double s, double p,
                                            double r, const FilterBank& bank,
                                            double slack = 1e-9);

/// Frobenius-magnitude field of grad v, as a d*d-component Field.
Field velocity_gradient_field(const Field& v);

}  // namespace lpmhd
