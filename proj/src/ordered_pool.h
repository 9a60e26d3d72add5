#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace leapt::detail {

// Runs work(i) for i in [0, n) on `workers` threads and calls emit(i, result)
// in index order, as soon as every earlier index has been emitted. `work`
// must not throw. emit runs under a lock, so it may write to shared sinks.
template <typename Work, typename Emit>
void run_ordered(size_t n, size_t workers, Work&& work, Emit&& emit) {
  using Result = decltype(work(size_t{0}));
  std::vector<std::optional<Result>> slots(n);
  std::atomic<size_t> next_task{0};
  std::mutex mu;
  size_t next_emit = 0;

  auto loop = [&] {
    while (true) {
      size_t i = next_task.fetch_add(1);
      if (i >= n) return;
      Result r = work(i);
      std::lock_guard lock(mu);
      slots[i].emplace(std::move(r));
      while (next_emit < n && slots[next_emit]) {
        emit(next_emit, *slots[next_emit]);
        slots[next_emit].reset();
        ++next_emit;
      }
    }
  };

  workers = std::max<size_t>(1, std::min(workers, n));
  if (workers == 1) {
    loop();
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (size_t w = 0; w < workers; ++w) threads.emplace_back(loop);
  for (auto& t : threads) t.join();
}

}  // namespace leapt::detail
