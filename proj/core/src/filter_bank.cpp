#include <openssl/evp.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/littlewood_paley.hpp"

namespace lpmhd {

double bump_profile(double rho) {
  if (!(rho > kAnnulusInner && rho < kAnnulusOuter)) return 0.0;
  const double x = (rho - kAnnulusInner) / (kAnnulusOuter - kAnnulusInner);
  const double denom = x * (1.0 - x);
  if (denom <= 0.0) return 0.0;
  return std::exp(-1.0 / denom);
}

double phi_profile(double rho) {
  const double num = bump_profile(rho);
  if (num == 0.0) return 0.0;
  // Shells 2^{-k} rho meeting the annulus have k within two of log2(rho).
  const int center = static_cast<int>(std::floor(std::log2(rho)));
  double denom = 0.0;
  for (int k = center - 3; k <= center + 3; ++k) denom += bump_profile(std::ldexp(rho, -k));
  return num / denom;
}

FilterBank FilterBank::build(const FrequencyGrid& grid, int j_min, int j_max) {
  if (j_max - j_min < 3) throw InvalidArgument("build_filter_bank: need j_max - j_min >= 3");
  if (std::ldexp(kAnnulusOuter, j_max) > grid.nyquist() * (1.0 + 1e-12)) {
    throw InvalidArgument("build_filter_bank: annulus of j_max = " + std::to_string(j_max) +
                          " exceeds the Nyquist wavenumber " + std::to_string(grid.nyquist()));
  }
  FilterBank bank;
  bank.grid_ = grid;
  bank.j_min_ = j_min;
  bank.j_max_ = j_max;
  auto phi = std::make_shared<std::vector<std::vector<double>>>();
  const auto& kn = grid.lattice().k_norm;
  for (int j = j_min; j <= j_max; ++j) {
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (kn[i] > 0.0) values[i] = phi_profile(std::ldexp(kn[i], -j));
    }
    phi->push_back(std::move(values));
  }
  bank.phi_ = std::move(phi);
  return bank;
}

FilterBank FilterBank::for_grid(const FrequencyGrid& grid) {
  const int j_min = static_cast<int>(std::ceil(std::log2(3.0 * grid.k0() / 8.0)));
  const int j_max = static_cast<int>(std::floor(std::log2(3.0 * grid.nyquist() / 8.0) + 1e-12));
  return build(grid, j_min, j_max);
}

double FilterBank::partition_low() const noexcept {
  return std::ldexp(kAnnulusOuter, j_min_ - 1);
}

double FilterBank::partition_high() const noexcept { return std::ldexp(2.0 * kAnnulusInner, j_max_); }

std::span<const double> FilterBank::multiplier(int j) const {
  if (!contains(j)) {
    throw InvalidArgument("dyadic index " + std::to_string(j) + " outside band [" +
                          std::to_string(j_min_) + ", " + std::to_string(j_max_) + "]");
  }
  return (*phi_)[static_cast<std::size_t>(j - j_min_)];
}

SpectralField FilterBank::block(int j, const SpectralField& F) const {
  require_same_grid(grid_, F.grid(), "dyadic_block");
  const auto phi = multiplier(j);
  SpectralField out = F;
  for (int c = 0; c < out.components(); ++c) {
    auto G = out.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) G[i] *= phi[i];
  }
  return out;
}

Field FilterBank::block(int j, const Field& f) const { return to_physical(block(j, to_spectral(f))); }

std::vector<double> FilterBank::low_pass_multiplier(int j) const {
  if (j < j_min_ || j > j_max_ + 1) {
    throw InvalidArgument("low_pass: level " + std::to_string(j) + " outside [" +
                          std::to_string(j_min_) + ", " + std::to_string(j_max_ + 1) + "]");
  }
  std::vector<double> m(grid_.size(), 0.0);
  m[0] = 1.0;  // flat index 0 is the k = 0 mode
  for (int k = j_min_; k <= j - 1; ++k) {
    const auto phi = multiplier(k);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += phi[i];
  }
  return m;
}

SpectralField FilterBank::low_pass(int j, const SpectralField& F) const {
  require_same_grid(grid_, F.grid(), "low_pass");
  const auto m = low_pass_multiplier(j);
  SpectralField out = F;
  for (int c = 0; c < out.components(); ++c) {
    auto G = out.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) G[i] *= m[i];
  }
  return out;
}

Field FilterBank::low_pass(int j, const Field& f) const {
  return to_physical(low_pass(j, to_spectral(f)));
}

std::string FilterBank::phi_sha256() const {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("phi_sha256: digest initialisation failed");
  }
  for (const auto& values : *phi_) {
    for (double v : values) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
      unsigned char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xffu);
      EVP_DigestUpdate(ctx, bytes, sizeof bytes);
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string FilterBank::export_json() const {
  nlohmann::ordered_json j;
  j["grid"] = {{"d", grid_.dim()}, {"N", grid_.points_per_axis()}, {"L", grid_.box_length()}};
  j["j_min"] = j_min_;
  j["j_max"] = j_max_;
  j["annulus"] = {kAnnulusInner, kAnnulusOuter};
  j["phi_sha256"] = phi_sha256();
  return j.dump(2);
}

}  // namespace lpmhd
