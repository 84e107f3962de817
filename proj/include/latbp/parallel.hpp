#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace latbp {

/// Worker cap: LATBP_THREADS when set, hardware concurrency otherwise.
inline int thread_cap() {
  if (const char* env = std::getenv("LATBP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(task) for task in [0, count) and folds the results with `merge`,
/// which must be associative and commutative with `init` as identity; the
/// outcome is then deterministic regardless of scheduling. Workers fold
/// locally and the per-worker accumulators merge in worker order.
template <typename Result, typename Fn, typename Merge>
Result map_reduce(long count, Result init, Fn fn, Merge merge) {
  int workers = static_cast<int>(std::min<long>(thread_cap(), std::max<long>(count, 1)));
  if (workers <= 1 || count <= 1) {
    Result acc = init;
    for (long t = 0; t < count; ++t) acc = merge(std::move(acc), fn(t));
    return acc;
  }
  std::vector<Result> partial(workers, init);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      Result acc = init;
      for (long t = w; t < count; t += workers) acc = merge(std::move(acc), fn(t));
      partial[static_cast<std::size_t>(w)] = std::move(acc);
    });
  }
  for (auto& th : threads) th.join();
  Result acc = init;
  for (int w = 0; w < workers; ++w) acc = merge(std::move(acc), std::move(partial[w]));
  return acc;
}

}  // namespace latbp
