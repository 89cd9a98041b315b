#include <algorithm>
#include <cmath>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/littlewood_paley.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

namespace {

void require_exponent(double v, const char* name) {
  if (!(v >= 1.0)) throw InvalidArgument(std::string("Besov index ") + name + " must lie in [1, inf]");
}

}  // namespace

void BesovSpec::validate() const {
  if (!std::isfinite(s)) throw InvalidArgument("Besov regularity s must be finite");
  require_exponent(p, "p");
  require_exponent(r, "r");
  if (q) require_exponent(*q, "q");
}

std::vector<double> block_lp_norms(const Field& f, double p, const FilterBank& bank) {
  require_same_grid(f.grid(), bank.grid(), "block_lp_norms");
  const SpectralField F = to_spectral(f);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(bank.count()));
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    out.push_back(lp_norm(to_physical(bank.block(j, F)), p));
  }
  return out;
}

double aggregate_blocks(std::span<const double> block_norms, double s, double r, int j_min) {
  double acc = 0.0;
  for (std::size_t i = 0; i < block_norms.size(); ++i) {
    const double w = std::exp2(s * (j_min + static_cast<int>(i))) * block_norms[i];
    if (std::isinf(r)) {
      acc = std::max(acc, w);
    } else if (r == 1.0) {
      acc += w;
    } else {
      acc += std::pow(w, r);
    }
  }
  if (std::isinf(r) || r == 1.0) return acc;
  return std::pow(acc, 1.0 / r);
}

double besov_norm(const Field& f, const BesovSpec& spec, const FilterBank& bank) {
  spec.validate();
  const auto blocks = block_lp_norms(f, spec.p, bank);
  return aggregate_blocks(blocks, spec.s, spec.r, bank.j_min());
}

double trapezoid_power(std::span<const double> times, std::span<const double> values, double q,
                       std::size_t last) {
  double acc = 0.0;
  for (std::size_t i = 1; i <= last; ++i) {
    const double a = q == 1.0 ? values[i - 1] : std::pow(values[i - 1], q);
    const double b = q == 1.0 ? values[i] : std::pow(values[i], q);
    acc += 0.5 * (times[i] - times[i - 1]) * (a + b);
  }
  return acc;
}

BlockNormTable::BlockNormTable(const TimeSeriesField& series, double p, const FilterBank& bank)
    : times_(series.times), j_min_(bank.j_min()), p_(p) {
  series.validate();
  require_exponent(p, "p");
  norms_.resize(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    norms_[i] = block_lp_norms(series.snapshots[i], p, bank);
  }
}

double BlockNormTable::norm(std::size_t snapshot, int j) const {
  return norms_.at(snapshot).at(static_cast<std::size_t>(j - j_min_));
}

double BlockNormTable::besov(std::size_t snapshot, double s, double r) const {
  return aggregate_blocks(norms_.at(snapshot), s, r, j_min_);
}

double BlockNormTable::chemin_lerner(double s, double q, double r, std::size_t last) const {
  require_exponent(q, "q");
  if (last >= times_.size()) throw InvalidArgument("chemin_lerner: snapshot index out of range");
  const std::size_t blocks = norms_.front().size();
  std::vector<double> per_block(blocks, 0.0);
  std::vector<double> column(times_.size());
  for (std::size_t b = 0; b < blocks; ++b) {
    if (std::isinf(q)) {
      double m = 0.0;
      for (std::size_t i = 0; i <= last; ++i) m = std::max(m, norms_[i][b]);
      per_block[b] = m;
    } else {
      for (std::size_t i = 0; i <= last; ++i) column[i] = norms_[i][b];
      per_block[b] = std::pow(trapezoid_power(times_, column, q, last), 1.0 / q);
    }
  }
  return aggregate_blocks(per_block, s, r, j_min_);
}

std::vector<double> BlockNormTable::cumulative_chemin_lerner(double s, double q, double r) const {
  require_exponent(q, "q");
  const std::size_t blocks = norms_.front().size();
  std::vector<double> running(blocks, 0.0);
  std::vector<double> per_block(blocks, 0.0);
  std::vector<double> out(times_.size(), 0.0);
  for (std::size_t i = 0; i < times_.size(); ++i) {
    for (std::size_t b = 0; b < blocks; ++b) {
      if (std::isinf(q)) {
        running[b] = std::max(running[b], norms_[i][b]);
        per_block[b] = running[b];
      } else {
        if (i > 0) {
          const double a = std::pow(norms_[i - 1][b], q);
          const double c = std::pow(norms_[i][b], q);
          running[b] += 0.5 * (times_[i] - times_[i - 1]) * (a + c);
        }
        per_block[b] = std::pow(running[b], 1.0 / q);
      }
    }
    out[i] = aggregate_blocks(per_block, s, r, j_min_);
  }
  return out;
}

double BlockNormTable::bochner(double s, double q, double r, std::size_t last) const {
  require_exponent(q, "q");
  if (last >= times_.size()) throw InvalidArgument("bochner: snapshot index out of range");
  std::vector<double> values(times_.size());
  for (std::size_t i = 0; i <= last; ++i) values[i] = besov(i, s, r);
  if (std::isinf(q)) return *std::max_element(values.begin(), values.begin() + static_cast<long>(last) + 1);
  return std::pow(trapezoid_power(times_, values, q, last), 1.0 / q);
}

double chemin_lerner_norm(const TimeSeriesField& series, const BesovSpec& spec,
                          const FilterBank& bank) {
  spec.validate();
  if (!spec.q) throw InvalidArgument("chemin_lerner_norm: time exponent q is required");
  return BlockNormTable(series, spec.p, bank).chemin_lerner(spec.s, *spec.q, spec.r);
}

double bochner_norm(const TimeSeriesField& series, const BesovSpec& spec, const FilterBank& bank) {
  spec.validate();
  if (!spec.q) throw InvalidArgument("bochner_norm: time exponent q is required");
  return BlockNormTable(series, spec.p, bank).bochner(spec.s, *spec.q, spec.r);
}

}  // namespace lpmhd
