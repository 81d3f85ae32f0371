#ifndef RMFLAB_PARALLEL_HPP
#define RMFLAB_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rmflab {

// Index-parallel fan-out: each index computes into its own slot and the
// merge is an ordered read, so results do not depend on worker count or
// scheduling.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, int workers, Fn&& fn) {
  std::vector<R> out(count);
  if (count == 0) return out;
  const int W = workers > 0
                    ? std::min<int>(workers, static_cast<int>(count))
                    : 1;
  if (W <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(W));
  std::vector<std::thread> pool;
  for (int w = 0; w < W; ++w) {
    pool.emplace_back([&, w] {
      try {
        std::size_t i;
        while ((i = next.fetch_add(1)) < count) out[i] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace rmflab

#endif  // RMFLAB_PARALLEL_HPP
