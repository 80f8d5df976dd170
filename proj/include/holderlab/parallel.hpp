#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace holderlab {

// Worker count used by the parallel helpers below. Results never depend on it:
// work is split into blocks whose boundaries depend only on the problem size,
// and per-block results are combined in block order.
void set_thread_count(unsigned count);
unsigned thread_count();

namespace detail {

inline constexpr std::size_t kBlockCount = 256;

inline std::size_t block_size(std::size_t count) {
  return std::max<std::size_t>(1, (count + kBlockCount - 1) / kBlockCount);
}

template <class Body>
void run_blocks(std::size_t blocks, Body&& body) {
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

// Calls body(i) for every i in [0, count).
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  if (count == 0) return;
  const std::size_t size = detail::block_size(count);
  const std::size_t blocks = (count + size - 1) / size;
  detail::run_blocks(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(count, (b + 1) * size);
    for (std::size_t i = b * size; i < end; ++i) body(i);
  });
}

// Folds map(i) over [0, count) with combine; blocks are folded left to right, so
// the result is independent of the worker count even for non-associative
// floating-point combines.
template <class T, class Map, class Combine>
T parallel_reduce(std::size_t count, T identity, Map&& map, Combine&& combine) {
  if (count == 0) return identity;
  const std::size_t size = detail::block_size(count);
  const std::size_t blocks = (count + size - 1) / size;
  std::vector<T> partial(blocks, identity);
  detail::run_blocks(blocks, [&](std::size_t b) {
    T acc = identity;
    const std::size_t end = std::min(count, (b + 1) * size);
    for (std::size_t i = b * size; i < end; ++i) acc = combine(std::move(acc), map(i));
    partial[b] = std::move(acc);
  });
  T result = identity;
  for (auto& p : partial) result = combine(std::move(result), std::move(p));
  return result;
}

}  // namespace holderlab
