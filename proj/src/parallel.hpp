#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace tiltedstop::detail {

// Runs work(block, worker) for every block, handing blocks out dynamically.
// Returns the number of workers used; worker indices are below it. Callers
// combine per-worker results with integer addition only, so the outcome does
// not depend on scheduling.
template <class Work>
unsigned run_blocks(std::uint64_t blocks, unsigned threads, Work&& work) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(blocks, 1)));
  std::atomic<std::uint64_t> next{0};
  auto loop = [&](unsigned worker) {
    for (std::uint64_t b = next++; b < blocks; b = next++) work(b, worker);
  };
  if (workers == 1) {
    loop(0);
    return 1;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(loop, t);
  for (auto& th : pool) th.join();
  return workers;
}

}  // namespace tiltedstop::detail
