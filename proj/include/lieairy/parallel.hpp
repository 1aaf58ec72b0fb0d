// Block-parallel helper with schedule-independent results: work is cut into
// fixed blocks, each block produces its own partial, and partials are folded
// in block order. LIE_AIRY_THREADS caps the worker count.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lieairy {

inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("LIE_AIRY_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

// fn(block_index) -> partial result; partials are returned in block order.
// A worker exception is captured and rethrown (lowest block index wins) after
// the pool drains, so failures surface to the caller instead of terminating.
template <typename T>
std::vector<T> run_blocks(std::size_t nblocks, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(nblocks);
  unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(nblocks, 1)));
  if (workers <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) out[b] = fn(b);
    return out;
  }
  std::vector<std::exception_ptr> errors(nblocks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      try {
        out[b] = fn(b);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace lieairy
