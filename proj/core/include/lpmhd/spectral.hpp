#pragma once

#include <limits>

#include "lpmhd/fft.hpp"
#include "lpmhd/field.hpp"

namespace lpmhd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Spectral differentiation. The Nyquist index of the differentiated axis is
// zeroed so derivatives of real fields stay real.
SpectralField spectral_derivative(const SpectralField& F, int axis);
Field spectral_derivative(const Field& f, int axis);

/// Gradient of a scalar field: a d-component field.
Field gradient(const Field& scalar);
/// Gradient of a vector field: entries(i, j) = d_j v_i.
TensorField vector_gradient(const Field& v);
/// Divergence of a d-component field.
SpectralField divergence(const SpectralField& F);
Field divergence(const Field& v);

/// Leray projector P = I - grad Delta^{-1} div, mode by mode. The k = 0 mode
/// (and any mode whose derivative wavenumber vanishes) is left unchanged.
SpectralField leray_project(const SpectralField& F);
Field leray_project(const Field& f);

/// Heat semigroup e^{t Delta}: multiplies mode k by exp(-|k|^2 t). t >= 0.
SpectralField heat_semigroup(const SpectralField& F, double t);
Field heat_semigroup(const Field& f, double t);

/// Zeroes every mode outside the 2/3-rule band.
SpectralField dealias(const SpectralField& F);
Field dealias(const Field& f);

/// Normalized Lebesgue norm (|1|_{L^p} = 1); vector fields use the pointwise
/// Euclidean magnitude; p = kInfinity gives the max norm.
double lp_norm(const Field& f, double p);

/// Normalized L^2 inner product summed over components.
double inner_product(const Field& a, const Field& b);

/// Mean of each component (the k = 0 content).
std::vector<double> mean(const Field& f);

/// Dealiased pointwise product of two scalar fields, or of a scalar with each
/// component of a vector field. Inputs and output are truncated to the 2/3 band.
Field dealiased_product(const Field& a, const Field& b);
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

/// div(a (x) b) with (a (x) b)_{ij} = a_i b_j and (div M)_i = sum_j d_j M_ij.
/// Equals (b . grad) a when div b = 0.
Field tensor_divergence(const Field& a, const Field& b);
SpectralField tensor_divergence(const SpectralField& a, const SpectralField& b);

/// (b . grad) f for a scalar or vector f, dealiased.
SpectralField advective_derivative(const SpectralField& b, const SpectralField& f);

/// Largest |k| with a nonzero coefficient above `relative_tolerance * max|F|`.
double spectral_radius(const SpectralField& F, double relative_tolerance = 0.0);

}  // namespace lpmhd
