#include "lpmhd/random_fields.hpp"

#include <cmath>

#include "lpmhd/fft.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

namespace {

SpectralField random_spectrum(const FrequencyGrid& grid, int components, double k_low,
                              double k_high, Rng& rng, double slope) {
  SpectralField F(grid, components);
  const auto& lat = grid.lattice();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < components; ++c) {
    auto G = F.component(c);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double kn = lat.k_norm[i];
      if (!lat.retained[i] || kn < k_low || kn > k_high || kn == 0.0) continue;
      const std::size_t j = lat.conjugate[i];
      if (j < i) continue;  // filled from its partner
      const double weight = std::pow(kn, -slope);
      const double re = normal(rng) * weight;
      const double im = (j == i) ? 0.0 : normal(rng) * weight;
      G[i] = Complex{re, im};
      G[j] = Complex{re, -im};
    }
  }
  return F;
}

Field normalized(Field f) {
  const double n = lp_norm(f, 2.0);
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

}  // namespace

Field random_band_limited(const FrequencyGrid& grid, int components, double k_low,
                          double k_high, Rng& rng, double slope) {
  return normalized(to_physical(random_spectrum(grid, components, k_low, k_high, rng, slope)));
}

Field random_divergence_free(const FrequencyGrid& grid, double k_low, double k_high, Rng& rng,
                             double slope) {
  const SpectralField F = random_spectrum(grid, grid.dim(), k_low, k_high, rng, slope);
  return normalized(to_physical(leray_project(F)));
}

Field single_mode(const FrequencyGrid& grid, const std::array<int, 3>& mode, double amplitude) {
  const double k0 = grid.k0();
  return Field::from_function(grid, 1, [&](const std::array<double, 3>& x, int) {
    double phase = 0.0;
    for (int a = 0; a < grid.dim(); ++a) phase += k0 * mode[a] * x[a];
    return amplitude * std::cos(phase);
  });
}

Field taylor_green_velocity(const FrequencyGrid& grid, double amplitude) {
  const double k0 = grid.k0();
  return Field::from_function(grid, grid.dim(), [&](const std::array<double, 3>& x, int c) {
    const double a = k0 * x[0];
    const double b = k0 * x[1];
    if (c == 0) return amplitude * std::sin(a) * std::cos(b);
    if (c == 1) return -amplitude * std::cos(a) * std::sin(b);
    return 0.0;
  });
}

Field taylor_green_magnetic(const FrequencyGrid& grid, double amplitude) {
  const double k0 = grid.k0();
  return Field::from_function(grid, grid.dim(), [&](const std::array<double, 3>& x, int c) {
    const double a = k0 * x[0];
    const double b = k0 * x[1];
    if (c == 0) return amplitude * std::sin(a) * std::cos(2.0 * b);
    if (c == 1) return -0.5 * amplitude * std::cos(a) * std::sin(2.0 * b);
    return 0.0;
  });
}

}  // namespace lpmhd
