#include "lpmhd/field.hpp"

#include <algorithm>
#include <cmath>

#include "lpmhd/error.hpp"

namespace lpmhd {

namespace {

void require_compatible(const FrequencyGrid& ga, int ca, const FrequencyGrid& gb, int cb,
                        const char* what) {
  require_same_grid(ga, gb, what);
  if (ca != cb) throw InvalidArgument(std::string(what) + ": component count mismatch");
}

}  // namespace

Field::Field(FrequencyGrid grid, int components)
    : grid_(std::move(grid)),
      components_(components),
      samples_(static_cast<std::size_t>(components) * grid_.size(), 0.0) {
  if (components < 1) throw InvalidArgument("Field: components must be >= 1");
}

Field Field::from_function(
    FrequencyGrid grid, int components,
    const std::function<double(const std::array<double, 3>&, int)>& fn) {
  Field f(std::move(grid), components);
  const std::size_t n = f.grid().size();
  for (int c = 0; c < components; ++c) {
    auto out = f.component(c);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(f.grid().coordinate(i), c);
  }
  return f;
}

std::span<double> Field::component(int c) noexcept {
  return {samples_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
}

std::span<const double> Field::component(int c) const noexcept {
  return {samples_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
}

Field Field::scalar(int c) const {
  if (c < 0 || c >= components_) throw InvalidArgument("Field::scalar: component out of range");
  Field out(grid_, 1);
  std::ranges::copy(component(c), out.samples_.begin());
  return out;
}

bool Field::all_finite() const noexcept {
  return std::ranges::all_of(samples_, [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& other) { return axpy(1.0, other); }

Field& Field::operator-=(const Field& other) { return axpy(-1.0, other); }

Field& Field::operator*=(double factor) noexcept {
  for (double& v : samples_) v *= factor;
  return *this;
}

Field& Field::axpy(double factor, const Field& other) {
  require_compatible(grid_, components_, other.grid_, other.components_, "Field arithmetic");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += factor * other.samples_[i];
  return *this;
}

SpectralField::SpectralField(FrequencyGrid grid, int components)
    : grid_(std::move(grid)),
      components_(components),
      coefficients_(static_cast<std::size_t>(components) * grid_.size(), Complex{0.0, 0.0}) {
  if (components < 1) throw InvalidArgument("SpectralField: components must be >= 1");
}

std::span<Complex> SpectralField::component(int c) noexcept {
  return {coefficients_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
}

std::span<const Complex> SpectralField::component(int c) const noexcept {
  return {coefficients_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
}

SpectralField& SpectralField::operator+=(const SpectralField& other) { return axpy(1.0, other); }

SpectralField& SpectralField::operator-=(const SpectralField& other) { return axpy(-1.0, other); }

SpectralField& SpectralField::operator*=(double factor) noexcept {
  for (Complex& v : coefficients_) v *= factor;
  return *this;
}

SpectralField& SpectralField::axpy(double factor, const SpectralField& other) {
  require_compatible(grid_, components_, other.grid_, other.components_,
                     "SpectralField arithmetic");
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    coefficients_[i] += factor * other.coefficients_[i];
  }
  return *this;
}

double SpectralField::conjugate_symmetry_defect() const noexcept {
  const auto& conj = grid_.lattice().conjugate;
  double defect = 0.0;
  double scale = 0.0;
  for (int c = 0; c < components_; ++c) {
    auto F = component(c);
    for (std::size_t i = 0; i < F.size(); ++i) {
      defect = std::max(defect, std::abs(F[i] - std::conj(F[conj[i]])));
      scale = std::max(scale, std::abs(F[i]));
    }
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

}  // namespace lpmhd
