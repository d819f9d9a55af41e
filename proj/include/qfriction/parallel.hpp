#ifndef QFRICTION_PARALLEL_HPP
#define QFRICTION_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qfriction::detail {

// Index-parallel loop over independent work items. The body must not throw;
// failures are to be recorded through the captured state.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 2;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qfriction::detail

#endif
