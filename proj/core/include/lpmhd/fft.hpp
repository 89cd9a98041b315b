#pragma once

#include "lpmhd/field.hpp"

namespace lpmhd {

/// Forward transform (unnormalized), per component.
SpectralField to_spectral(const Field& f);

/// Inverse transform dividing by N^d; returns the real part.
Field to_physical(const SpectralField& F);

}  // namespace lpmhd
