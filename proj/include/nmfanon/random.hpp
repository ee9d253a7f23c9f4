#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace nmfanon {

/// The single seeded stream threaded through every random choice of a run.
using Rng = std::mt19937_64;

/// Uniform index in [0, n). Implemented by rejection on the raw engine output
/// so the drawn sequence does not depend on the standard library vendor.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

}  // namespace nmfanon
