#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace siegel {

/// Runs body(i) for i in [0, n) on up to `threads` workers with static blocks.
/// Each index writes its own slot, so results do not depend on the thread count.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n ? n : 1)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

/// Pairwise summation in a fixed tree, independent of how the terms were produced.
template <class V>
V pairwise_sum(const std::vector<V>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return V{};
  if (hi - lo <= 8) {
    V s = xs[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) s += xs[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}
template <class V>
V pairwise_sum(const std::vector<V>& xs) {
  return pairwise_sum(xs, 0, xs.size());
}

}  // namespace siegel
