#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mcmc_certify {

inline unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(0..n_items-1), each item on whichever worker grabs it, and returns
// the results ordered by item index. Reductions over the returned vector are
// therefore independent of the worker count.
template <class T, class Fn>
std::vector<T> parallel_map(std::int64_t n_items, unsigned threads, Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(n_items));
  if (threads <= 1 || n_items <= 1) {
    for (std::int64_t i = 0; i < n_items; ++i)
      out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n_items) return;
      out[static_cast<std::size_t>(i)] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(n_items));
  pool.reserve(use);
  for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace mcmc_certify
