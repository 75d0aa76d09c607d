#include "albatch/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace albatch {

void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  if (chunk == 0) chunk = 1;
  const std::size_t num_chunks = (count + chunk - 1) / chunk;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t workers = std::min<std::size_t>({hw, num_chunks, 8});
  if (workers <= 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) {
      fn(c * chunk, std::min(count, (c + 1) * chunk));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      fn(c * chunk, std::min(count, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> team;
  team.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) team.emplace_back(worker);
  worker();
  for (auto& t : team) t.join();
}

}  // namespace albatch
