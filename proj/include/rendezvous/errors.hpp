#pragma once

#include <stdexcept>
#include <string>

namespace rendezvous {

// Thrown when a requested computation exceeds a size cap (either a
// documented per-operation bound or the RENDEZVOUS_MAX_K environment cap).
// The CLI maps this to exit code 3.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Global ceiling on the path length k. Reads RENDEZVOUS_MAX_K once
// (default 15); values outside [1, 19] are clamped so 3^k stays in int64
// and allocations stay sane.
int maxLevel();

// Validates minK <= k <= maxLevel(); throws ResourceLimitError / invalid_argument.
void requireLevel(int k, const char* what, int minK = 1);

}  // namespace rendezvous
