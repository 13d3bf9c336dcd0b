#ifndef GTREX_PARALLEL_HPP
#define GTREX_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gtrex {

/// Runs fn(i) for i in [0, n) on up to `jobs` worker threads (jobs <= 0 picks
/// hardware concurrency). Tasks must write only to task-indexed slots so the
/// result is independent of scheduling. The first task exception is rethrown
/// after all workers join.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gtrex

#endif  // GTREX_PARALLEL_HPP
