#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lpmhd/grid.hpp"

namespace lpmhd {

using Complex = std::complex<double>;

/// Real samples of a c-component field on a periodic grid. Components are
/// stored one after another, each in row-major axis order (last axis fastest).
class Field {
 public:
  Field() = default;
  Field(FrequencyGrid grid, int components);

  /// Samples a function of the physical coordinate for each component.
  static Field from_function(
      FrequencyGrid grid, int components,
      const std::function<double(const std::array<double, 3>& x, int component)>& fn);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  bool empty() const noexcept { return components_ == 0; }

  std::span<double> component(int c) noexcept;
  std::span<const double> component(int c) const noexcept;
  std::vector<double>& samples() noexcept { return samples_; }
  const std::vector<double>& samples() const noexcept { return samples_; }

  /// Extracts one component as a scalar field.
  Field scalar(int c) const;

  bool all_finite() const noexcept;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double factor) noexcept;
  /// this += factor * other
  Field& axpy(double factor, const Field& other);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator-(Field a) { return a *= -1.0; }

 private:
  FrequencyGrid grid_;
  int components_ = 0;
  std::vector<double> samples_;
};

/// Fourier coefficients of a Field. Forward transform is unnormalized
/// (F(m) = sum_x f(x) e^{-i k.x}); the inverse divides by N^d.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(FrequencyGrid grid, int components);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }

  std::span<Complex> component(int c) noexcept;
  std::span<const Complex> component(int c) const noexcept;
  std::vector<Complex>& coefficients() noexcept { return coefficients_; }
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor) noexcept;
  SpectralField& axpy(double factor, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// Largest |F(m) - conj F(-m)| relative to the largest |F|.
  double conjugate_symmetry_defect() const noexcept;

 private:
  FrequencyGrid grid_;
  int components_ = 0;
  std::vector<Complex> coefficients_;
};

/// Second-order tensor field, entries(i, j) with i, j in [0, d).
struct TensorField {
  FrequencyGrid grid;
  int dim = 0;
  std::vector<Field> entries;  // row-major (i, j)

  Field& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * dim + j)]; }
  const Field& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i * dim + j)];
  }
};

}  // namespace lpmhd
