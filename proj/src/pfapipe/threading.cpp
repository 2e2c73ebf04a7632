#include "pfapipe/threading.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pfapipe {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
  int n = g_max_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(int count, int chunks, const std::function<void(int, int, int)>& fn) {
  if (count <= 0) return;
  chunks = std::clamp(chunks, 1, count);

  auto chunk_range = [&](int c) {
    int base = count / chunks, rem = count % chunks;
    int begin = c * base + std::min(c, rem);
    int end = begin + base + (c < rem ? 1 : 0);
    return std::pair<int, int>(begin, end);
  };

  int workers = std::min(max_threads(), chunks);
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_range(c);
      fn(c, b, e);
    }
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        auto [b, e] = chunk_range(c);
        fn(c, b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  int chunks = std::min(count, std::max(1, max_threads() * 4));
  parallel_chunks(count, chunks, [&](int, int begin, int end) {
    for (int i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace pfapipe
