#pragma once

#include <functional>
#include <vector>

#include "lpmhd/field.hpp"

namespace lpmhd {

/// Snapshots of a field at strictly increasing times starting at 0.
struct TimeSeriesField {
  std::vector<double> times;
  std::vector<Field> snapshots;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  double horizon() const { return times.back(); }
  const FrequencyGrid& grid() const { return snapshots.front().grid(); }

  /// Throws InvalidArgument unless nonempty, times start at 0 and increase
  /// strictly, and all snapshots share grid and component count.
  void validate() const;

  /// Piecewise-linear interpolation in time; t must lie in [0, horizon].
  Field at(double t) const;

  void push_back(double t, Field f) {
    times.push_back(t);
    snapshots.push_back(std::move(f));
  }
};

/// A field-valued function of time (forcing, velocity, source).
using TimeFunction = std::function<Field(double)>;

/// Wraps a series as a time function (linear interpolation, range-checked).
TimeFunction interpolate(TimeSeriesField series);

/// Time-independent function.
TimeFunction constant_in_time(Field f);

/// Series of the difference a - b on a shared time mesh.
TimeSeriesField difference(const TimeSeriesField& a, const TimeSeriesField& b);

}  // namespace lpmhd
