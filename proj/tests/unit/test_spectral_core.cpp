#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/random_fields.hpp"
#include "lpmhd/spectral.hpp"
#include "oracles/oracles.hpp"

using namespace lpmhd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Field cos_x1(const FrequencyGrid& g) {
  return Field::from_function(g, 1, [](const auto& x, int) { return std::cos(x[0]); });
}

double rel_l2(const Field& a, const Field& b) { return lp_norm(a - b, 2.0) / lp_norm(b, 2.0); }

}  // namespace

TEST(Grid, IntegerLatticeForTwoPiBox) {
  const auto g = make_grid(2, 8, kTwoPi);
  EXPECT_EQ(g.size(), 64u);
  EXPECT_DOUBLE_EQ(g.k0(), 1.0);
  const auto& k = g.lattice().k;
  int lo = 0, hi = 0;
  for (const auto& kv : k) {
    for (int a = 0; a < 2; ++a) {
      EXPECT_EQ(kv[a], std::round(kv[a]));
      lo = std::min(lo, static_cast<int>(kv[a]));
      hi = std::max(hi, static_cast<int>(kv[a]));
    }
  }
  EXPECT_EQ(lo, -4);
  EXPECT_EQ(hi, 3);
}

TEST(Grid, ThreeDimensionalSize) { EXPECT_EQ(make_grid(3, 16, kTwoPi).size(), 4096u); }

TEST(Grid, RejectsBadArguments) {
  EXPECT_THROW(make_grid(2, 7, 1.0), InvalidArgument);
  EXPECT_THROW(make_grid(4, 8, 1.0), InvalidArgument);
  EXPECT_THROW(make_grid(2, 4, 1.0), InvalidArgument);
  EXPECT_THROW(make_grid(2, 8, 0.0), InvalidArgument);
}

TEST(Fft, ZeroFieldHasZeroCoefficients) {
  const auto g = make_grid(2, 16, kTwoPi);
  const SpectralField F = to_spectral(Field(g, 1));
  for (const auto& c : F.coefficients()) EXPECT_EQ(c, Complex(0.0));
}

TEST(Fft, CosineHasTwoCoefficients) {
  const auto g = make_grid(2, 16, kTwoPi);
  const SpectralField F = to_spectral(cos_x1(g));
  int nonzero = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(F.coefficients()[i]) > 1e-12) {
      ++nonzero;
      const auto m = g.unflatten(i);
      EXPECT_EQ(std::abs(g.mode(m[0])), 1);
      EXPECT_EQ(g.mode(m[1]), 0);
      EXPECT_NEAR(F.coefficients()[i].real(), 0.5 * g.size(), 1e-10);
    }
  }
  EXPECT_EQ(nonzero, 2);
}

TEST(Fft, MatchesNaiveDft) {
  const auto g = make_grid(2, 8, kTwoPi);
  Rng rng(3);
  const Field f = random_band_limited(g, 2, 1.0, 3.0, rng);
  const SpectralField F = to_spectral(f);
  for (int c = 0; c < 2; ++c) {
    const auto ref = oracle::naive_dft(f, c);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(F.component(c)[i] - ref[i]), 1e-12);
  }
}

TEST(Fft, RoundTripRandomFields) {
  for (int d : {2, 3}) {
    const auto g = make_grid(d, d == 2 ? 64 : 16, kTwoPi);
    Rng rng(11);
    const Field f = random_band_limited(g, d, 1.0, 5.0, rng);
    EXPECT_LT(rel_l2(to_physical(to_spectral(f)), f), 1e-12);
    EXPECT_LT(to_spectral(f).conjugate_symmetry_defect(), 1e-12);
  }
}

TEST(Spectral, DerivativeOfCosine) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field d = spectral_derivative(cos_x1(g), 0);
  const Field expected = Field::from_function(g, 1, [](const auto& x, int) { return -std::sin(x[0]); });
  EXPECT_LT(lp_norm(d - expected, kInfinity), 1e-13);
}

TEST(Spectral, DerivativeScalesSingleMode) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field f = single_mode(g, {3, -2, 0});
  // d1^2 d2 cos(3x - 2y) = -18 sin(3x - 2y)
  const Field d = spectral_derivative(spectral_derivative(spectral_derivative(f, 0), 0), 1);
  const Field expected = Field::from_function(g, 1, [](const auto& x, int) {
    return -18.0 * std::sin(3 * x[0] - 2 * x[1]);
  });
  EXPECT_LT(lp_norm(d - expected, kInfinity), 1e-11);
}

TEST(Spectral, StreamFunctionFieldIsDivergenceFree) {
  const auto g = make_grid(2, 32, kTwoPi);
  Rng rng(5);
  const Field psi = random_band_limited(g, 1, 1.0, 8.0, rng);
  const Field grad = gradient(psi);
  Field u(g, 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    u.component(0)[i] = -grad.component(1)[i];
    u.component(1)[i] = grad.component(0)[i];
  }
  EXPECT_LT(lp_norm(divergence(u), 2.0), 1e-12);
}

TEST(Spectral, LerayKillsGradientsAndFixesSolenoidalFields) {
  const auto g = make_grid(2, 32, kTwoPi);
  Rng rng(8);
  const Field q = random_band_limited(g, 1, 1.0, 10.0, rng);
  EXPECT_LT(lp_norm(leray_project(gradient(q)), 2.0), 1e-12 * lp_norm(gradient(q), 2.0));
  const Field w = random_divergence_free(g, 1.0, 10.0, rng);
  EXPECT_LT(rel_l2(leray_project(w), w), 1e-12);
}

TEST(Spectral, LerayMatchesBruteForceHelmholtzSplit) {
  const auto g = make_grid(2, 16, kTwoPi);
  Rng rng(21);
  const Field f = random_band_limited(g, 2, 1.0, 6.0, rng);
  const auto [grad_part, sol_part] = oracle::helmholtz_split(f);
  EXPECT_LT(lp_norm(leray_project(f) - sol_part, 2.0), 1e-12 * lp_norm(f, 2.0));
  EXPECT_LT(lp_norm(f - leray_project(f) - grad_part, 2.0), 1e-12 * lp_norm(f, 2.0));
}

TEST(Spectral, LerayIdempotentAndSolenoidal) {
  const auto g = make_grid(3, 16, kTwoPi);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const Field f = random_band_limited(g, 3, 1.0, 5.0, rng);
    const Field Pf = leray_project(f);
    EXPECT_LE(lp_norm(leray_project(Pf) - Pf, 2.0), 1e-12 * lp_norm(f, 2.0));
    EXPECT_LE(lp_norm(divergence(Pf), 2.0), 1e-10 * lp_norm(f, 2.0));
  }
}

TEST(Spectral, HeatSemigroup) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field f = single_mode(g, {1, 0, 0}, 2.0);
  EXPECT_LT(lp_norm(heat_semigroup(f, 0.0) - f, kInfinity), 1e-15);
  EXPECT_LT(lp_norm(heat_semigroup(f, 1.0) - std::exp(-1.0) * f, kInfinity), 1e-14);
  EXPECT_THROW(heat_semigroup(f, -1e-3), InvalidArgument);

  Rng rng(4);
  const SpectralField F = to_spectral(random_band_limited(g, 1, 1.0, 10.0, rng));
  const SpectralField composed = heat_semigroup(heat_semigroup(F, 0.03), 0.05);
  const SpectralField direct = heat_semigroup(F, 0.08);
  EXPECT_LT(lp_norm(to_physical(composed) - to_physical(direct), 2.0), 1e-13);
}

TEST(Spectral, HeatSemigroupContractsLpNorms) {
  const auto g = make_grid(2, 32, kTwoPi);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Field f = random_band_limited(g, 1, 1.0, 10.0, rng);
    for (double p : {1.0, 2.0, kInfinity}) {
      double previous = lp_norm(f, p);
      for (double t : {0.001, 0.01, 0.05, 0.2}) {
        const double now = lp_norm(heat_semigroup(f, t), p);
        EXPECT_LE(now, previous * (1.0 + 1e-12));
        previous = now;
      }
    }
  }
}

TEST(Spectral, DerivativeCommutesWithSemigroup) {
  const auto g = make_grid(2, 32, kTwoPi);
  Rng rng(9);
  const Field f = random_band_limited(g, 1, 1.0, 10.0, rng);
  const Field a = spectral_derivative(heat_semigroup(f, 0.02), 1);
  const Field b = heat_semigroup(spectral_derivative(f, 1), 0.02);
  EXPECT_LT(lp_norm(a - b, 2.0), 1e-12 * lp_norm(a, 2.0));
}

TEST(Spectral, LpNormsClosedForms) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field one = Field::from_function(g, 1, [](const auto&, int) { return 1.0; });
  for (double p : {1.0, 2.0, 3.5, kInfinity}) EXPECT_NEAR(lp_norm(one, p), 1.0, 1e-15);
  const Field c = cos_x1(g);
  EXPECT_NEAR(lp_norm(c, 2.0), 1.0 / std::sqrt(2.0), 1e-15);
  // (1/2pi) int cos^4 = 3/8, exact for the uniform rule on 32 points.
  EXPECT_NEAR(lp_norm(c, 4.0), std::pow(3.0 / 8.0, 0.25), 1e-14);
  EXPECT_THROW(lp_norm(c, 0.5), InvalidArgument);
}

TEST(Spectral, DealiasedProductMatchesDirectConvolution) {
  const auto g = make_grid(2, 16, kTwoPi);
  Rng rng(13);
  const Field a = random_band_limited(g, 1, 1.0, 7.0, rng);
  const Field b = random_band_limited(g, 1, 1.0, 7.0, rng);
  const SpectralField P = to_spectral(dealiased_product(a, b));
  const auto ref = oracle::convolution_product(g, oracle::naive_dft(a, 0), oracle::naive_dft(b, 0));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(P.coefficients()[i] - ref[i]), 1e-11);
}

TEST(Spectral, TensorDivergenceConventions) {
  const auto g = make_grid(2, 32, kTwoPi);
  const Field zero(g, 2);
  EXPECT_EQ(lp_norm(tensor_divergence(zero, zero), kInfinity), 0.0);

  Rng rng(17);
  const Field a = random_band_limited(g, 2, 1.0, 5.0, rng);
  const Field b = random_divergence_free(g, 1.0, 5.0, rng);
  const Field lhs = tensor_divergence(a, b);
  const Field rhs = to_physical(advective_derivative(to_spectral(b), to_spectral(a)));
  EXPECT_LT(lp_norm(lhs - rhs, 2.0), 1e-10 * lp_norm(a, 2.0) * lp_norm(b, 2.0));

  // Two-mode closed form: a = (cos y, 0), b = (0, sin x) gives div(a(x)b)_1 = d_y(cos y sin x).
  const Field a2 = Field::from_function(g, 2, [](const auto& x, int c) { return c == 0 ? std::cos(x[1]) : 0.0; });
  const Field b2 = Field::from_function(g, 2, [](const auto& x, int c) { return c == 1 ? std::sin(x[0]) : 0.0; });
  const Field expected = Field::from_function(g, 2, [](const auto& x, int c) {
    return c == 0 ? -std::sin(x[1]) * std::sin(x[0]) : 0.0;
  });
  EXPECT_LT(lp_norm(tensor_divergence(a2, b2) - expected, kInfinity), 1e-13);
}

TEST(Spectral, AdvectionIsEnergyNeutral) {
  const auto g = make_grid(2, 64, kTwoPi);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const Field a = random_divergence_free(g, 1.0, 12.0, rng);
    const double n = lp_norm(a, 2.0);
    EXPECT_LE(std::abs(inner_product(tensor_divergence(a, a), a)), 1e-8 * n * n * n);
  }
}

TEST(Spectral, FieldFinitenessAndShapes) {
  const auto g = make_grid(2, 8, kTwoPi);
  Field f(g, 2);
  EXPECT_TRUE(f.all_finite());
  f.component(1)[3] = std::nan("");
  EXPECT_FALSE(f.all_finite());
  EXPECT_THROW(Field(g, 1) + Field(g, 2), InvalidArgument);
  EXPECT_THROW(Field(g, 1) + Field(make_grid(2, 16, kTwoPi), 1), InvalidArgument);
}
