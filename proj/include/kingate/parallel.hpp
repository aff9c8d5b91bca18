#pragma once

// Evaluates independent work items on a small thread pool. Results are
// stored by index, so the output order never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kingate {

inline unsigned default_worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, Fn fn, unsigned workers = default_worker_count()) {
  std::vector<Result> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace kingate
