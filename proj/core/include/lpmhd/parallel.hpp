#pragma once

#include <cstddef>
#include <functional>

namespace lpmhd {

/// Caps the number of worker threads used by parallel_for (>= 1).
void set_max_threads(unsigned threads);
unsigned max_threads() noexcept;

/// Runs body(i) for i in [0, count) on up to max_threads() threads. Each index
/// is processed exactly once; callers write results into per-index slots so
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lpmhd
