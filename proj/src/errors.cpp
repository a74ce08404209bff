#include "rendezvous/errors.hpp"

#include <cstdlib>

namespace rendezvous {

int maxLevel() {
  static const int cap = [] {
    int k = 15;
    if (const char* env = std::getenv("RENDEZVOUS_MAX_K")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end != env && *end == '\0') k = static_cast<int>(parsed);
    }
    if (k < 1) k = 1;
    if (k > 19) k = 19;
    return k;
  }();
  return cap;
}

void requireLevel(int k, const char* what, int minK) {
  if (k < minK)
    throw std::invalid_argument(std::string(what) + ": k must be >= " + std::to_string(minK));
  if (k > maxLevel())
    throw ResourceLimitError(std::string(what) + ": k=" + std::to_string(k) +
                             " exceeds the configured cap " + std::to_string(maxLevel()));
}

}  // namespace rendezvous
