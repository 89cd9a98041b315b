#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/linear_solvers.hpp"
#include "lpmhd/random_fields.hpp"
#include "lpmhd/spectral.hpp"

using namespace lpmhd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FrozenWeights {
  double lambda, h, w_old, w_new;
};
// Closed-form weights evaluated with 30-digit arithmetic.
constexpr FrozenWeights kFrozenWeights[] = {
    {0.0, 0.002, 0.001, 0.001},
    {1.0, 0.002, 0.00099866766613355547939, 0.00099933366653337776508},
    {100.0, 0.002, 0.0008761548153210884798, 0.0009365376538990929335},
    {450.0, 0.002, 0.00056177196664904120351, 0.00075696212281629410342},
    {800.0, 0.01, 0.00015577825567951209273, 0.0010938024160356097675},
};

Field constant_velocity(const FrequencyGrid& g, double a, double b) {
  return Field::from_function(g, 2, [=](const auto&, int c) { return c == 0 ? a : b; });
}

// Heat solution error at T for u' - Delta u = sin(w t) cos(x), u0 = 0.
double duhamel_error(double dt) {
  const auto g = make_grid(2, 16, kTwoPi);
  const Field mode = single_mode(g, {1, 0, 0});
  const double w = 7.0, T = 1.0;
  HeatProblem problem{Field(g, 1), [&](double t) { return std::sin(w * t) * mode; }, T, dt, 1000000};
  const auto sol = solve_heat(problem);
  const double exact = (std::sin(w * T) - w * std::cos(w * T) + w * std::exp(-T)) / (1.0 + w * w);
  return lp_norm(sol.snapshots.back() - exact * mode, kInfinity);
}

}  // namespace

TEST(Heat, FrozenEtd2Weights) {
  for (const auto& [lambda, h, w_old, w_new] : kFrozenWeights) {
    const auto [a, b] = etd2_weights(lambda, h);
    EXPECT_NEAR(a, w_old, 1e-14 * w_old) << lambda;
    EXPECT_NEAR(b, w_new, 1e-14 * w_new) << lambda;
  }
}

TEST(Heat, WeightsContinuousAcrossSeriesSwitch) {
  const double h = 0.01;
  const auto below = etd2_weights(std::nextafter(100.0, 0.0), h);
  const auto above = etd2_weights(100.0, h);
  EXPECT_NEAR(below.first, above.first, 1e-15);
  EXPECT_NEAR(below.second, above.second, 1e-15);
}

TEST(Heat, UnforcedModesDecayExactly) {
  const auto g = make_grid(2, 32, kTwoPi);
  Rng rng(3);
  const Field u0 = random_band_limited(g, 2, 0.0, 10.0, rng);
  const auto sol = solve_heat({u0, {}, 0.37, 0.01, 5});
  EXPECT_DOUBLE_EQ(sol.times.back(), 0.37);
  EXPECT_LT(lp_norm(sol.snapshots.back() - heat_semigroup(u0, 0.37), kInfinity), 1e-13);
}

TEST(Heat, SnapshotMeshAndCadence) {
  const auto g = make_grid(2, 16, kTwoPi);
  const Field u0 = single_mode(g, {1, 0, 0});
  const auto all = solve_heat({u0, {}, 0.1, 0.03, 1});
  ASSERT_EQ(all.times.size(), 5u);
  EXPECT_DOUBLE_EQ(all.times[3], 0.09);
  EXPECT_DOUBLE_EQ(all.times[4], 0.1);
  const auto sparse = solve_heat({u0, {}, 0.1, 0.03, 2});
  ASSERT_EQ(sparse.times.size(), 3u);
  EXPECT_DOUBLE_EQ(sparse.times[1], 0.06);
  EXPECT_THROW(solve_heat({u0, {}, 0.1, 0.0, 1}), InvalidArgument);
  EXPECT_THROW(solve_heat({u0, {}, 0.1, 0.01, 0}), InvalidArgument);
  EXPECT_THROW(solve_heat({Field(), {}, 0.1, 0.01, 1}), InvalidArgument);
}

TEST(Heat, AffineForcingIsIntegratedExactly) {
  // u' + 4u = a + b t (mode cos 2x), u0 = c: closed form.
  const auto g = make_grid(2, 16, kTwoPi);
  const Field mode = single_mode(g, {2, 0, 0});
  const double a = 0.7, b = -1.3, c = 0.4, T = 0.5;
  const auto sol = solve_heat({c * mode, [&](double t) { return (a + b * t) * mode; }, T, 0.05, 1});
  auto exact = [&](double t) {
    const double particular = (a - b / 4.0) / 4.0 + b * t / 4.0;
    return particular + (c - (a - b / 4.0) / 4.0) * std::exp(-4.0 * t);
  };
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    EXPECT_LT(lp_norm(sol.snapshots[i] - exact(sol.times[i]) * mode, kInfinity), 1e-13);
  }
}

TEST(Heat, SecondOrderForSmoothForcing) {
  const double e1 = duhamel_error(0.02);
  const double e2 = duhamel_error(0.01);
  const double e3 = duhamel_error(0.005);
  EXPECT_GT(std::log2(e1 / e2), 1.9);
  EXPECT_GT(std::log2(e2 / e3), 1.9);
  EXPECT_LT(e3, 1e-4);
}

TEST(Heat, EstimateReportFactorsAndIndexOrder) {
  const auto g = make_grid(2, 64, kTwoPi);
  const auto bank = FilterBank::for_grid(g);
  Rng rng(7);
  const Field u0 = random_band_limited(g, 1, 1.0, 12.0, rng);
  const Field G = random_band_limited(g, 1, 1.0, 12.0, rng);
  HeatProblem problem{u0, constant_in_time(G), 0.2, 0.01, 1};
  const auto sol = solve_heat(problem);
  EXPECT_THROW(heat_estimate_report(sol, problem, 2.0, 4.0, 0.0, 2.0, 1.0, bank), InvalidArgument);
  const auto r = heat_estimate_report(sol, problem, kInfinity, 1.0, 0.0, 2.0, 1.0, bank);
  EXPECT_EQ(r.variant, "heat");
  ASSERT_EQ(r.rhs_factors.size(), 1u);
  EXPECT_EQ(r.rhs_factors[0].first, "u0+G");
  EXPECT_GT(r.ratio, 0.0);
  EXPECT_LE(r.ratio, 1.0 + 1e-12);  // L~^inf(B^0) of u is bounded by ||u0|| + ||G||_{L~^1(B^0)}
}

TEST(Transport, ConstantVelocityTranslates) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field f0 = Field::from_function(g, 1, [](const auto& x, int) { return std::cos(x[0] + 2 * x[1]); });
  const auto sol = solve_transport({f0, constant_in_time(constant_velocity(g, 1.0, -0.5)), {}, 1.0, 0.01, 10});
  const Field exact = Field::from_function(g, 1, [](const auto& x, int) {
    return std::cos((x[0] - 1.0) + 2 * (x[1] + 0.5));
  });
  EXPECT_LT(lp_norm(sol.snapshots.back() - exact, kInfinity), 1e-9);
  const auto cons = transport_conservation(sol);
  EXPECT_LT(cons.l2_relative_drift, 1e-9);
  EXPECT_LT(cons.overshoot, 1e-9);
}

TEST(Transport, SourceOnlyIntegratesExactly) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field mode = single_mode(g, {3, 1, 0});
  const auto sol = solve_transport({Field(g, 1), constant_in_time(Field(g, 2)),
                                    [&](double t) { return (1.0 + t * t) * mode; }, 1.0, 0.1, 1});
  EXPECT_LT(lp_norm(sol.snapshots.back() - (4.0 / 3.0) * mode, kInfinity), 1e-13);
}

TEST(Transport, CflAndDivergenceErrors) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field f0 = single_mode(g, {1, 0, 0});
  // dt * |v| * N / L = 0.1 * 32 / 2pi = 0.509 > 0.5
  try {
    solve_transport({f0, constant_in_time(constant_velocity(g, 1.0, 0.0)), {}, 1.0, 0.1, 1});
    FAIL() << "expected CflError";
  } catch (const CflError& e) {
    EXPECT_DOUBLE_EQ(e.dt(), 0.1);
  }
  EXPECT_NO_THROW(solve_transport({f0, constant_in_time(constant_velocity(g, 1.0, 0.0)), {}, 0.2, 0.09, 1}));
  const Field compressive = Field::from_function(g, 2, [](const auto& x, int c) { return c == 0 ? std::cos(x[0]) : 0.0; });
  EXPECT_THROW(solve_transport({f0, constant_in_time(compressive), {}, 0.1, 0.01, 1}), InvalidArgument);
  EXPECT_THROW(solve_transport({f0, {}, {}, 0.1, 0.01, 1}), InvalidArgument);
  EXPECT_THROW(solve_transport({f0, constant_in_time(Field(g, 2)), {}, 0.1, 0.01, 1, true}), InvalidArgument);
}

TEST(Transport, ShearFlowConservesL2) {
  const auto g = make_grid(2, 64, kTwoPi);
  const Field v = Field::from_function(g, 2, [](const auto& x, int c) { return c == 0 ? std::sin(x[1]) : 0.0; });
  Rng rng(2);
  const Field f0 = random_band_limited(g, 1, 1.0, 4.0, rng);
  const auto sol = solve_transport({f0, constant_in_time(v), {}, 0.5, 0.01, 10});
  EXPECT_LT(transport_conservation(sol).l2_relative_drift, 1e-6);
}

TEST(Transport, ProjectedVectorTransportStaysSolenoidal) {
  const auto g = make_grid(2, 32, kTwoPi);
  Rng rng(4);
  const Field v = random_divergence_free(g, 1.0, 3.0, rng);
  const Field B0 = random_divergence_free(g, 1.0, 4.0, rng);
  const auto sol = solve_transport({B0, constant_in_time(v), {}, 0.2, 0.01, 5, true});
  for (const auto& snap : sol.snapshots) EXPECT_LT(lp_norm(divergence(snap), 2.0), 1e-12);
}

TEST(Transport, MinimalConstantMatchesClosedForm) {
  // With g = 0 the smallest admissible C is max_t log(lhs(t) / ||f0||) / V(t).
  const auto g = make_grid(2, 64, kTwoPi);
  const auto bank = FilterBank::for_grid(g);
  Rng rng(11);
  const Field v = random_divergence_free(g, 1.0, 4.0, rng);
  Field v_scaled = v;
  v_scaled *= 1.0 / lp_norm(v, kInfinity);
  const Field f0 = random_band_limited(g, 1, 1.0, 12.0, rng);
  TransportProblem problem{f0, constant_in_time(v_scaled), {}, 0.3, 5e-3, 5};
  const auto sol = solve_transport(problem);
  const double slack = 1e-9;
  const auto est = transport_estimate_report(sol, problem, 1.0, 2.0, 1.0, bank, slack);
  const double f0_norm = est.report.rhs_factors[0].second;
  double expected = 0.0;
  for (std::size_t i = 1; i < est.V.size(); ++i) {
    expected = std::max(expected, std::log(est.lhs[i] / (f0_norm * (1.0 + slack))) / est.V[i]);
  }
  ASSERT_GT(expected, 0.0);
  EXPECT_NEAR(est.minimal_constant, expected, 1e-9 * expected);
  EXPECT_EQ(est.report.ratio, est.minimal_constant);
  for (std::size_t i = 0; i < est.V.size(); ++i) EXPECT_LE(est.lhs[i], est.rhs[i] * (1.0 + 2 * slack));
  EXPECT_FALSE(est.endpoint);
}

TEST(Transport, RegularityRange) {
  const auto g = make_grid(2, 64, kTwoPi);
  const auto bank = FilterBank::for_grid(g);
  const Field f0 = single_mode(g, {1, 1, 0});
  TransportProblem problem{f0, constant_in_time(constant_velocity(g, 0.5, 0.5)), {}, 0.1, 0.01, 1};
  const auto sol = solve_transport(problem);
  // d = 2, p = 2: admissible s in (-2, 2), endpoint 2 only for r = 1.
  EXPECT_THROW(transport_estimate_report(sol, problem, 2.1, 2.0, 1.0, bank), InvalidArgument);
  EXPECT_THROW(transport_estimate_report(sol, problem, 2.0, 2.0, 2.0, bank), InvalidArgument);
  EXPECT_THROW(transport_estimate_report(sol, problem, -2.0, 2.0, 1.0, bank), InvalidArgument);
  EXPECT_TRUE(transport_estimate_report(sol, problem, 2.0, 2.0, 1.0, bank).endpoint);
  const auto inside = transport_estimate_report(sol, problem, -1.9, 2.0, 1.0, bank);
  EXPECT_FALSE(inside.endpoint);
  // p = 4: lower bound -2 * 1/4 - 1 = -1.5
  EXPECT_THROW(transport_estimate_report(sol, problem, -1.5, 4.0, 1.0, bank), InvalidArgument);
}

TEST(Transport, VelocityGradientField) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field v = Field::from_function(g, 2, [](const auto& x, int c) { return c == 0 ? std::sin(x[1]) : 0.0; });
  const Field grad = velocity_gradient_field(v);
  ASSERT_EQ(grad.components(), 4);
  const Field expected = Field::from_function(g, 1, [](const auto& x, int) { return std::cos(x[1]); });
  EXPECT_LT(lp_norm(grad.scalar(1) - expected, kInfinity), 1e-13);
  EXPECT_LT(lp_norm(grad.scalar(0), kInfinity) + lp_norm(grad.scalar(2), kInfinity) + lp_norm(grad.scalar(3), kInfinity), 1e-13);
}
