#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace addcomb {

struct Exec {
  unsigned workers = 1;
};

// Splits [0, count) into `workers` contiguous chunks, runs `body(begin, end, w)`
// for each, and returns the per-worker results in worker order so that
// reductions are deterministic for a fixed worker count.
template <class T, class Body>
std::vector<T> parallel_chunks(std::uint64_t count, Exec exec, Body body) {
  const unsigned workers = exec.workers == 0 ? 1 : exec.workers;
  std::vector<T> partial(workers);
  if (workers == 1) {
    partial[0] = body(std::uint64_t{0}, count, 0u);
    return partial;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    threads.emplace_back([&partial, &body, begin, end, w] { partial[w] = body(begin, end, w); });
  }
  for (auto& t : threads) t.join();
  return partial;
}

}  // namespace addcomb
