#include "lpmhd/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lpmhd/error.hpp"

namespace lpmhd {

double FrequencyGrid::k0() const noexcept { return 2.0 * std::numbers::pi / length_; }

double FrequencyGrid::nyquist() const noexcept { return std::numbers::pi * n_ / length_; }

std::size_t FrequencyGrid::flat(const std::array<int, 3>& idx) const noexcept {
  std::size_t f = 0;
  for (int a = 0; a < dim_; ++a) f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[a]);
  return f;
}

std::array<int, 3> FrequencyGrid::unflatten(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return idx;
}

std::array<double, 3> FrequencyGrid::coordinate(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = idx[a] * spacing();
  return x;
}

FrequencyGrid make_grid(int dim, int points_per_axis, double box_length) {
  if (dim != 2 && dim != 3) {
    throw InvalidArgument("make_grid: dimension must be 2 or 3, got " + std::to_string(dim));
  }
  const int n = points_per_axis;
  if (n < 8 || (n & (n - 1)) != 0) {
    throw InvalidArgument("make_grid: points per axis must be a power of two >= 8, got " +
                          std::to_string(n));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw InvalidArgument("make_grid: box length must be positive and finite");
  }

  FrequencyGrid g;
  g.dim_ = dim;
  g.n_ = n;
  g.length_ = box_length;
  g.size_ = 1;
  for (int a = 0; a < dim; ++a) g.size_ *= static_cast<std::size_t>(n);

  auto lat = std::make_shared<Lattice>();
  lat->dealias_cutoff = (n - 1) / 3;
  lat->k.resize(g.size_);
  lat->k_deriv.resize(g.size_);
  lat->k_squared.resize(g.size_);
  lat->k_norm.resize(g.size_);
  lat->retained.resize(g.size_);
  lat->conjugate.resize(g.size_);
  const double k0 = g.k0();
  for (std::size_t f = 0; f < g.size_; ++f) {
    const auto idx = g.unflatten(f);
    std::array<int, 3> neg{0, 0, 0};
    double ksq = 0.0;
    bool keep = true;
    for (int a = 0; a < dim; ++a) {
      const int m = g.mode(idx[a]);
      lat->k[f][a] = k0 * m;
      lat->k_deriv[f][a] = (idx[a] == n / 2) ? 0.0 : k0 * m;
      ksq += lat->k[f][a] * lat->k[f][a];
      keep = keep && std::abs(m) <= lat->dealias_cutoff;
      neg[a] = g.index_of_mode(-m);
    }
    lat->k_squared[f] = ksq;
    lat->k_norm[f] = std::sqrt(ksq);
    lat->retained[f] = keep ? 1 : 0;
    lat->conjugate[f] = g.flat(neg);
  }
  g.lattice_ = std::move(lat);
  return g;
}

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": grid mismatch");
}

}  // namespace lpmhd
