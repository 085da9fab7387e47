//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_SRC_PORTABLE_RANDOM_H_
#define WLBENCH_SRC_PORTABLE_RANDOM_H_

#include <cstdint>
#include <random>

namespace wlbench::internal {

// Uniform integer in [0, bound) by rejection. mt19937_64 output is fixed by
// the standard, unlike the std distributions, so results match everywhere.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::mt19937_64::max() - (std::mt19937_64::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

}  // namespace wlbench::internal

#endif  // WLBENCH_SRC_PORTABLE_RANDOM_H_
