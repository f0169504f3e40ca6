#pragma once

// Indexed min-reductions with a serial reference and an OpenMP kernel.
// Both return the same (value, index) pair bit for bit: ties in value go to
// the smallest index and NaN is treated as +infinity, so the result is a
// pure function of the indexed set and not of the reduction order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include <omp.h>

namespace hwb::kernels {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct IndexedMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = kNoIndex;
};

inline bool better(double v, std::size_t i, const IndexedMin& cur) {
  if (std::isnan(v)) return false;
  if (v < cur.value) return true;
  return v == cur.value && i < cur.index;
}

inline void merge_into(IndexedMin& acc, const IndexedMin& other) {
  if (other.index != kNoIndex && better(other.value, other.index, acc)) acc = other;
}

template <class F>
IndexedMin argmin_serial(std::size_t count, F&& f) {
  IndexedMin best;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = f(i);
    if (better(v, i, best)) best = {v, i};
  }
  return best;
}

template <class F>
IndexedMin argmin_parallel(std::size_t count, F&& f) {
  IndexedMin best;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    IndexedMin local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double v = f(idx);
      if (better(v, idx, local)) local = {v, idx};
    }
#pragma omp critical(hwb_argmin_merge)
    merge_into(best, local);
  }
  return best;
}

/// out[i] = f(i); each slot written by exactly one iteration.
template <class F, class Out>
void map_serial(std::size_t count, F&& f, Out& out) {
  for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
}

template <class F, class Out>
void map_parallel(std::size_t count, F&& f, Out& out) {
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  }
}

}  // namespace hwb::kernels
