#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace lpmhd {

/// Per-mode wavenumber tables of a periodic grid, indexed by the flat
/// row-major index of the (unshifted) FFT layout.
struct Lattice {
  std::vector<std::array<double, 3>> k;        // (2pi/L) m, m in [-N/2, N/2)
  std::vector<std::array<double, 3>> k_deriv;  // k with the Nyquist index set to 0
  std::vector<double> k_squared;
  std::vector<double> k_norm;
  std::vector<std::uint8_t> retained;  // 2/3-rule dealiasing mask
  std::vector<std::size_t> conjugate;  // flat index of -m
  int dealias_cutoff = 0;              // retained iff |m_a| <= cutoff for all axes
};

/// Uniform periodic grid on [0, L)^d with N points per axis.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return n_; }
  double box_length() const noexcept { return length_; }
  std::size_t size() const noexcept { return size_; }

  /// Fundamental wavenumber 2pi/L.
  double k0() const noexcept;
  /// Largest resolved wavenumber per axis, pi N / L.
  double nyquist() const noexcept;
  /// Grid spacing L/N.
  double spacing() const noexcept { return length_ / n_; }

  /// Signed integer mode of an axis index.
  int mode(int index) const noexcept { return index < n_ / 2 ? index : index - n_; }
  /// Axis index of a signed integer mode.
  int index_of_mode(int m) const noexcept { return ((m % n_) + n_) % n_; }

  /// Flat index from per-axis indices (unused trailing axes ignored).
  std::size_t flat(const std::array<int, 3>& idx) const noexcept;
  std::array<int, 3> unflatten(std::size_t flat) const noexcept;
  /// Physical coordinate of a sample.
  std::array<double, 3> coordinate(std::size_t flat) const noexcept;

  const Lattice& lattice() const noexcept { return *lattice_; }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  friend FrequencyGrid make_grid(int, int, double);

  int dim_ = 0;
  int n_ = 0;
  double length_ = 0.0;
  std::size_t size_ = 0;
  std::shared_ptr<const Lattice> lattice_;
};

/// Builds a grid; d must be 2 or 3 and N a power of two >= 8.
FrequencyGrid make_grid(int dim, int points_per_axis, double box_length);

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* what);

}  // namespace lpmhd
