#include "hypersq/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace hypersq {

unsigned worker_count() {
  unsigned count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYPERSQ_THREADS")) {
    const std::string_view text(env);
    unsigned cap = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc{} && ptr == text.data() + text.size() && cap > 0) count = std::min(count, cap);
  }
  return count;
}

}  // namespace hypersq
