#pragma once

#include <cstdint>
#include <random>

#include "lpmhd/field.hpp"

namespace lpmhd {

using Rng = std::mt19937_64;

/// Random real field whose Fourier support is the set of retained modes with
/// k_low <= |k| <= k_high. Coefficients are complex Gaussians scaled by
/// |k|^{-slope}; the result is normalized to unit L^2 norm (unless zero).
Field random_band_limited(const FrequencyGrid& grid, int components, double k_low,
                          double k_high, Rng& rng, double slope = 0.0);

/// Divergence-free, zero-mean random vector field with support in the band.
Field random_divergence_free(const FrequencyGrid& grid, double k_low, double k_high, Rng& rng,
                             double slope = 0.0);

/// Real field equal to amplitude * cos(k . x) for an integer mode vector.
Field single_mode(const FrequencyGrid& grid, const std::array<int, 3>& mode,
                  double amplitude = 1.0);

/// Taylor-Green type velocity A (sin x1 cos x2, -cos x1 sin x2[, 0]).
Field taylor_green_velocity(const FrequencyGrid& grid, double amplitude);

/// Divergence-free companion A (sin x1 cos 2x2, -1/2 cos x1 sin 2x2[, 0]).
Field taylor_green_magnetic(const FrequencyGrid& grid, double amplitude);

}  // namespace lpmhd
