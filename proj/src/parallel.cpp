#include "fvpg/parallel.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace fvpg {

namespace {
std::atomic<int> g_thread_count{1};
}

int thread_count() { return g_thread_count.load(std::memory_order_relaxed); }

void set_thread_count(int n) {
  g_thread_count.store(n < 1 ? 1 : n, std::memory_order_relaxed);
}

int env_thread_count() {
  const char* s = std::getenv("FVPG_THREADS");
  if (s == nullptr || *s == '\0') return 1;
  int n = 0;
  const auto [ptr, ec] = std::from_chars(s, s + std::strlen(s), n);
  if (ec != std::errc{} || ptr != s + std::strlen(s) || n < 1) return 1;
  return n;
}

}  // namespace fvpg
