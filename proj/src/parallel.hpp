#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cvmdi::detail {

/// Runs body(i) for i in [0, n) on a fixed pool of threads. Each index is
/// independent, so results only depend on how the caller stores them.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&body, w, workers, n] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
}

}  // namespace cvmdi::detail
