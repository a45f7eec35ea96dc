#pragma once
// Shard-parallel execution with scheduling-independent results: work is split
// into a fixed shard count keyed into per-shard RNG streams, and callers
// reduce shard outputs in index order, so any EON_THREADS value (including 1)
// produces bit-identical results.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace eon {

// Worker-thread cap from the EON_THREADS environment variable; 0 or unset
// means one thread per hardware core.
inline int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("EON_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<unsigned>(v);
  }
  return static_cast<int>(n);
}

// Runs fn(shard) for shard in [0, n_shards) on up to worker_count() threads.
// fn must only write shard-local state; ordering across shards is undefined.
template <class F>
void parallel_shards(int n_shards, F&& fn) {
  const int workers = std::min(worker_count(), n_shards);
  if (workers <= 1) {
    for (int s = 0; s < n_shards; ++s) fn(s);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int s = next.fetch_add(1); s < n_shards; s = next.fetch_add(1)) fn(s);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace eon
