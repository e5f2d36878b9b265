#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace culdiv {

// Runs work(i) for i in [0, n) on `jobs` threads and calls commit(i, result)
// on the calling thread in increasing i. Workers stay at most `window` items
// ahead of the last commit. The first exception from either side is
// rethrown after all workers have stopped.
template <typename Work, typename Commit>
void parallel_ordered(std::size_t n, std::size_t jobs, Work&& work, Commit&& commit, std::size_t window = 0) {
  using Result = decltype(work(std::size_t{0}));
  jobs = std::max<std::size_t>(1, jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) commit(i, work(i));
    return;
  }
  if (window == 0) window = 4 * jobs;

  std::mutex mu;
  std::condition_variable ready;    // a result landed
  std::condition_variable advance;  // the commit cursor moved
  std::vector<std::optional<Result>> slots(n);
  std::size_t next = 0;
  std::size_t committed = 0;
  bool stop = false;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock lock(mu);
        advance.wait(lock, [&] { return stop || next >= n || next < committed + window; });
        if (stop || next >= n) return;
        i = next++;
      }
      try {
        Result r = work(i);
        std::lock_guard lock(mu);
        slots[i].emplace(std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
      ready.notify_all();
      advance.notify_all();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);

  try {
    for (std::size_t i = 0; i < n; ++i) {
      Result r;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return stop || slots[i].has_value(); });
        if (!slots[i]) break;
        r = std::move(*slots[i]);
        slots[i].reset();
      }
      commit(i, std::move(r));
      {
        std::lock_guard lock(mu);
        committed = i + 1;
      }
      advance.notify_all();
    }
  } catch (...) {
    std::lock_guard lock(mu);
    if (!error) error = std::current_exception();
    stop = true;
  }
  {
    std::lock_guard lock(mu);
    stop = true;
  }
  advance.notify_all();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace culdiv
