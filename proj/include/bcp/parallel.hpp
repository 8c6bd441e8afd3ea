#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

namespace bcp {

/// Thread count from BCP_THREADS when set to a positive integer, else the OpenMP default.
int default_threads();

/// Result slot of one task: the value, or the exception it threw.
template <class T>
struct TaskResult {
  std::optional<T> value;
  std::exception_ptr error;
};

/// Reference implementation: runs fn(0..count-1) in index order on the calling thread.
template <class T, class F>
std::vector<TaskResult<T>> serial_map(std::size_t count, F&& fn) {
  std::vector<TaskResult<T>> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    try {
      out[i].value.emplace(fn(i));
    } catch (...) {
      out[i].error = std::current_exception();
    }
  }
  return out;
}

/// Unordered parallel map over independent tasks. Each result lands in its own
/// index slot, so the output is identical to serial_map for pure fn.
template <class T, class F>
std::vector<TaskResult<T>> parallel_map(std::size_t count, int threads, F&& fn) {
  if (threads <= 1 || count <= 1) return serial_map<T>(count, fn);
  std::vector<TaskResult<T>> out(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx].value.emplace(fn(idx));
    } catch (...) {
      out[idx].error = std::current_exception();
    }
  }
  return out;
}

}  // namespace bcp
