#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpmhd/field.hpp"
#include "lpmhd/time_series.hpp"

namespace lpmhd {

/// Radii of the annulus carrying the dyadic profile.
inline constexpr double kAnnulusInner = 3.0 / 4.0;
inline constexpr double kAnnulusOuter = 8.0 / 3.0;

/// exp(-1/(x(1-x))) with x = (rho - 3/4)/(8/3 - 3/4), and exactly 0 unless
/// 3/4 < rho < 8/3.
double bump_profile(double rho);

/// Radial dyadic profile phi(rho) = bump(rho) / sum_k bump(2^{-k} rho).
/// Satisfies sum_j phi(2^{-j} rho) = 1 for every rho > 0.
double phi_profile(double rho);

/// Dyadic filters phi_j(k) = phi(2^{-j}|k|) on a grid's lattice for
/// j in [j_min, j_max]. Immutable and cheap to copy.
class FilterBank {
 public:
  /// Requires j_max - j_min >= 3 and (8/3) 2^{j_max} <= pi N / L.
  static FilterBank build(const FrequencyGrid& grid, int j_min, int j_max);
  /// Widest admissible band: j_min = ceil(log2(3 k0 / 8)), j_max = floor(log2(3 k_nyq / 8)).
  static FilterBank for_grid(const FrequencyGrid& grid);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  int count() const noexcept { return j_max_ - j_min_ + 1; }
  bool contains(int j) const noexcept { return j >= j_min_ && j <= j_max_; }

  /// Radial range on which sum_{j_min..j_max} phi_j = 1:
  /// [(8/3) 2^{j_min - 1}, (3/2) 2^{j_max}].
  double partition_low() const noexcept;
  double partition_high() const noexcept;

  std::span<const double> multiplier(int j) const;

  /// Dyadic block Delta_j.
  SpectralField block(int j, const SpectralField& F) const;
  Field block(int j, const Field& f) const;

  /// Low-pass S_j = mean + sum_{k=j_min}^{j-1} Delta_k, for j in [j_min, j_max + 1];
  /// S_{j_min} keeps only the mean mode.
  SpectralField low_pass(int j, const SpectralField& F) const;
  Field low_pass(int j, const Field& f) const;

  /// Multiplier of S_j evaluated on the lattice.
  std::vector<double> low_pass_multiplier(int j) const;

  /// SHA-256 (hex) of the phi values as little-endian f64, ordered by j then flat index.
  std::string phi_sha256() const;
  /// JSON document: grid, j_min, j_max, annulus constants, phi_sha256.
  std::string export_json() const;

 private:
  FrequencyGrid grid_;
  int j_min_ = 0;
  int j_max_ = 0;
  std::shared_ptr<const std::vector<std::vector<double>>> phi_;
};

/// Indices (s, p, r) of a homogeneous Besov norm, optional time exponent q.
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
  std::optional<double> q;

  void validate() const;
};

/// ||Delta_j f||_{L^p} for each j in the bank, in order j_min..j_max.
std::vector<double> block_lp_norms(const Field& f, double p, const FilterBank& bank);

/// l^r aggregation of 2^{js} * block_norms[j - j_min]; r = inf gives the max.
double aggregate_blocks(std::span<const double> block_norms, double s, double r, int j_min);

/// Homogeneous Besov norm over the bank's band. The mean mode never enters.
double besov_norm(const Field& f, const BesovSpec& spec, const FilterBank& bank);

/// Block L^p norms of every snapshot of a series, computed once so that many
/// Chemin-Lerner and Bochner norms can be evaluated cheaply.
class BlockNormTable {
 public:
  BlockNormTable(const TimeSeriesField& series, double p, const FilterBank& bank);

  std::size_t snapshots() const noexcept { return times_.size(); }
  int j_min() const noexcept { return j_min_; }
  double p() const noexcept { return p_; }
  const std::vector<double>& times() const noexcept { return times_; }
  double norm(std::size_t snapshot, int j) const;

  /// Besov norm of one snapshot.
  double besov(std::size_t snapshot, double s, double r) const;
  /// ||f||_{L~^q_t(B^s_{p,r})} over [0, t_last] (trapezoid in time, max for q = inf).
  double chemin_lerner(double s, double q, double r, std::size_t last) const;
  double chemin_lerner(double s, double q, double r) const {
    return chemin_lerner(s, q, r, snapshots() - 1);
  }
  /// The same norm over [0, t_i] for every snapshot i.
  std::vector<double> cumulative_chemin_lerner(double s, double q, double r) const;
  /// ||f||_{L^q_t(B^s_{p,r})}: time norm of the Besov norm.
  double bochner(double s, double q, double r, std::size_t last) const;
  double bochner(double s, double q, double r) const { return bochner(s, q, r, snapshots() - 1); }

 private:
  std::vector<double> times_;
  std::vector<std::vector<double>> norms_;  // [snapshot][j - j_min]
  int j_min_ = 0;
  double p_ = 2.0;
};

/// Chemin-Lerner norm L~^q_T(B^s_{p,r}); spec.q is required.
double chemin_lerner_norm(const TimeSeriesField& series, const BesovSpec& spec,
                          const FilterBank& bank);
/// Bochner norm L^q_T(B^s_{p,r}); spec.q is required.
double bochner_norm(const TimeSeriesField& series, const BesovSpec& spec, const FilterBank& bank);

/// Quadrature of int_0^{t_last} g(t)^q dt by the trapezoid rule.
double trapezoid_power(std::span<const double> times, std::span<const double> values, double q,
                       std::size_t last);

enum class SupportKind { Ball, Ring };

struct BernsteinWindow {
  double low = 0.0;
  double high = std::numeric_limits<double>::infinity();
};

struct BernsteinReport {
  /// sup_{|a|=k} ||d^a f||_{L^q} / (lambda^{k + d(1/p - 1/q)} ||f||_{L^p}).
  double upper_ratio = 0.0;
  /// Ring case only: sup_{|a|=k} ||d^a f||_{L^p} / (lambda^k ||f||_{L^p}).
  std::optional<double> lower_ratio;
  bool in_window = false;
};

/// Ratios of the Bernstein inequalities for f with spectrum in lambda * Ring
/// (the filter annulus) or lambda * Ball (|xi| <= 8/3). Throws InvalidArgument
/// if coefficients above support_tolerance * max|F| lie outside the support.
BernsteinReport bernstein_ratios(const Field& f, double lambda, int order, double p, double q,
                                 SupportKind support, BernsteinWindow window = {},
                                 double support_tolerance = 1e-12);

}  // namespace lpmhd
