#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dyndet {

/// Calls fn(i) for i in [0, count) using up to `workers` threads with a
/// static block partition. Each index is visited exactly once; callers write
/// results into per-index slots and reduce afterwards in index order, which
/// keeps results independent of the worker count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  const std::size_t threads = std::min<std::size_t>(workers, count);
  const std::size_t block = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        const std::size_t begin = t * block;
        const std::size_t end = std::min(count, begin + block);
        try {
          for (std::size_t i = begin; i < end; ++i)
            fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace dyndet
