#include "pathboltz/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace pathboltz {

std::size_t worker_count() {
  if (const char* env = std::getenv("PATHBOLTZ_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<std::size_t>(n);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<std::complex<double>> run_blocks(
    std::size_t blocks, const std::function<std::complex<double>(std::size_t)>& block) {
  std::vector<std::complex<double>> results(blocks);
  const std::size_t workers = std::min(worker_count(), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) results[b] = block(b);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
        results[b] = block(b);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace pathboltz
