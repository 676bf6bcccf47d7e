#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace curv4 {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, n) into `threads` contiguous chunks and runs
/// `body(begin, end, chunk)` on each. Chunk boundaries depend only on
/// (n, threads); callers merge per-chunk results in chunk order.
template <typename Body>
void parallel_chunks(std::size_t n, int threads, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
  if (chunks <= 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    pool.emplace_back([&body, begin, end, c] { body(begin, end, c); });
  }
}

}  // namespace curv4
