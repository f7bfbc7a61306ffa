#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace coxpack::detail {

/// Splits [0, count) into contiguous chunks, runs f(begin, end) for each on up
/// to `jobs` threads and returns the results in chunk order, so reductions over
/// the result are deterministic regardless of scheduling.
template <class F>
auto parallel_chunks(std::size_t count, unsigned jobs, F&& f) -> std::vector<decltype(f(std::size_t{}, std::size_t{}))> {
  using R = decltype(f(std::size_t{}, std::size_t{}));
  jobs = std::max(1u, jobs);
  const std::size_t chunks = std::min<std::size_t>(std::max<std::size_t>(count, 1), jobs);
  std::vector<R> results(chunks);
  if (chunks == 1) {
    results[0] = f(std::size_t{0}, count);
    return results;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    pool.emplace_back([&, c, begin, end] {
      try {
        results[c] = f(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace coxpack::detail
