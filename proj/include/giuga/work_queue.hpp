#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace giuga {

// Runs work(index) for every entry of `indices` (ascending) on `workers`
// threads and returns the results keyed by index. `done` is invoked under a
// lock, in completion order. When fatal(result) holds for some index, larger
// indices that have not started yet are skipped; every smaller index still
// runs, so the prefix up to the first fatal result is always complete.
template <class Result, class Work, class Done, class Fatal>
std::map<std::uint64_t, Result> run_indexed(const std::vector<std::uint64_t>& indices,
                                             unsigned workers, Work&& work, Done&& done,
                                             Fatal&& fatal) {
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::map<std::uint64_t, Result> results;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> first_fatal{kNone};
  std::exception_ptr error;

  auto loop = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= indices.size()) return;
      const std::uint64_t index = indices[slot];
      if (index > first_fatal.load()) continue;
      try {
        Result r = work(index);
        const bool is_fatal = fatal(r);
        std::lock_guard lock(mu);
        done(r);
        results.emplace(index, std::move(r));
        if (is_fatal) {
          std::uint64_t seen = first_fatal.load();
          while (index < seen && !first_fatal.compare_exchange_weak(seen, index)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        first_fatal.store(0);
      }
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace giuga
