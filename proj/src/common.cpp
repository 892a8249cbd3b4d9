#include "dcert/common.hpp"

#include <atomic>
#include <cstdlib>

namespace dcert {

namespace {
std::atomic<int> g_workers{0};

int default_workers() {
  if (const char* env = std::getenv("DECAYCERT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return std::min(n, kMaxChunks);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 16u));
}
}  // namespace

int worker_count() {
  const int n = g_workers.load();
  return n > 0 ? n : default_workers();
}

void set_worker_count(int n) { g_workers.store(std::clamp(n, 0, kMaxChunks)); }

void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t, int)>& body,
                  int* chunks_used) {
  if (n <= 0) {
    if (chunks_used) *chunks_used = 0;
    return;
  }
  const int workers = std::min<std::int64_t>(worker_count(), n);
  if (chunks_used) *chunks_used = workers;
  if (workers <= 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const std::int64_t step = (n + workers - 1) / workers;
  for (int c = 0; c < workers; ++c) {
    const std::int64_t b = static_cast<std::int64_t>(c) * step;
    const std::int64_t e = std::min(n, b + step);
    if (b >= e) break;
    pool.emplace_back([&, b, e, c] { body(b, e, c); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dcert
