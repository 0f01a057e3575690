#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lipreach {

/// Splits [0, n) into `threads` contiguous chunks and runs
/// body(chunk, begin, end) for each, one thread per chunk. Chunk
/// boundaries depend only on n and the chunk count, so a caller that
/// reduces per-chunk results in chunk order gets the same answer for any
/// thread count as long as the reduction is order-stable. The first
/// exception in chunk order is rethrown after all threads join.
template <class Body>
void for_each_chunk(std::size_t n, std::size_t threads, Body&& body) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(threads, n));
  if (chunks == 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    pool.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace lipreach
