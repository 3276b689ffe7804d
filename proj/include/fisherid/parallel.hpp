#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fisherid/types.hpp"

namespace fisherid {

// Thread count resolution: explicit request wins, then the FISHERID_THREADS
// environment variable, then hardware concurrency. Always >= 1.
inline int resolve_thread_count(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FISHERID_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers using a static
// block partition. Work items must write only to their own output slots;
// results are then independent of the thread count by construction.
inline void parallel_for(Index count, int threads, const std::function<void(Index)>& fn) {
  if (count <= 0) return;
  const int workers = std::min<int>(std::max(threads, 1), static_cast<int>(count));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }

  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    const Index begin = count * t / workers;
    const Index end = count * (t + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (Index i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fisherid
