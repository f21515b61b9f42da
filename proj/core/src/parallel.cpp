#include "sgn/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace sgn {
namespace {

std::atomic<unsigned> g_threads{0};

constexpr std::size_t kTiles = 64;

}  // namespace

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& fn) {
  const std::size_t tiles = std::min(kTiles, std::max<std::size_t>(n, 1));
  std::vector<double> partial(tiles, 0.0);
  parallel_for(tiles, [&](std::size_t t) {
    const std::size_t lo = n * t / tiles;
    const std::size_t hi = n * (t + 1) / tiles;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += fn(i);
    partial[t] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace sgn
