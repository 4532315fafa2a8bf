#include "amh/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace amh::parallel {

namespace {

std::atomic<unsigned> g_max_threads{0};

unsigned hardware_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned max_threads() {
  unsigned n = g_max_threads.load();
  return n == 0 ? hardware_threads() : n;
}

unsigned effective_threads(std::size_t n_items) {
  if (n_items == 0) return 0;
  std::size_t cap = std::min<std::size_t>(max_threads(), n_items);
  return static_cast<unsigned>(cap);
}

void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  unsigned workers = effective_threads(n);
  if (workers == 0) return;
  if (workers == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&](std::size_t begin, std::size_t end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  // Contiguous chunks of near-equal size; the first (n % workers) chunks
  // take one extra item.
  std::size_t base = n / workers;
  std::size_t extra = n % workers;
  std::size_t begin = 0;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t len = base + (w < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(run, ranges[w].first, ranges[w].second);
  }
  run(ranges[0].first, ranges[0].second);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace amh::parallel
