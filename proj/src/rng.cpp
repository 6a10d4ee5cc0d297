#include "fdsl/rng.hpp"

namespace fdsl {

std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  std::uint64_t r = next_u64();
  while (r > limit) r = next_u64();
  return r % n;
}

}  // namespace fdsl
