#include "lpmhd/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lpmhd/error.hpp"

namespace lpmhd {

void TimeSeriesField::validate() const {
  if (times.empty()) throw InvalidArgument("time series is empty");
  if (times.size() != snapshots.size()) {
    throw InvalidArgument("time series: times and snapshots differ in length");
  }
  if (times.front() != 0.0) throw InvalidArgument("time series must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("time series times must increase");
    require_same_grid(snapshots[i].grid(), snapshots[0].grid(), "time series");
    if (snapshots[i].components() != snapshots[0].components()) {
      throw InvalidArgument("time series: component count changes between snapshots");
    }
  }
}

Field TimeSeriesField::at(double t) const {
  const double tol = 1e-12 * std::max(1.0, horizon());
  if (t < -tol || t > horizon() + tol) {
    throw InvalidArgument("time series does not cover t = " + std::to_string(t));
  }
  if (times.size() == 1) return snapshots.front();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t hi = static_cast<std::size_t>(std::distance(times.begin(), it));
  hi = std::clamp<std::size_t>(hi, 1, times.size() - 1);
  const std::size_t lo = hi - 1;
  const double w = std::clamp((t - times[lo]) / (times[hi] - times[lo]), 0.0, 1.0);
  if (w == 0.0) return snapshots[lo];
  if (w == 1.0) return snapshots[hi];
  Field out = snapshots[lo];
  out *= 1.0 - w;
  out.axpy(w, snapshots[hi]);
  return out;
}

TimeFunction interpolate(TimeSeriesField series) {
  series.validate();
  auto shared = std::make_shared<const TimeSeriesField>(std::move(series));
  return [shared](double t) { return shared->at(t); };
}

TimeFunction constant_in_time(Field f) {
  auto shared = std::make_shared<const Field>(std::move(f));
  return [shared](double) { return *shared; };
}

TimeSeriesField difference(const TimeSeriesField& a, const TimeSeriesField& b) {
  if (a.times != b.times) throw InvalidArgument("difference: time meshes differ");
  TimeSeriesField out;
  out.times = a.times;
  out.snapshots.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.snapshots.push_back(a.snapshots[i] - b.snapshots[i]);
  return out;
}

}  // namespace lpmhd
