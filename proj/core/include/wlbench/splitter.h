//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_SPLITTER_H_
#define WLBENCH_SPLITTER_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wlbench/generator.h"

namespace wlbench {

enum class SplitPart : std::uint8_t { kTrain, kValid, kTest };

std::string to_string(SplitPart part);
SplitPart parse_split_part(const std::string& s);

struct SplitAssignment {
  std::vector<SplitPart> parts;  // one per benchmark sample
  std::uint64_t seed = 0;
  // Train/valid/test shares in tenths.
  std::array<unsigned, 3> ratio_tenths{7, 2, 1};
  // Node-count quartile edges (q1, q2, q3); a graph with n nodes falls in
  // bin #{edges e : n > e}.
  std::vector<double> size_bin_edges;

  std::array<std::size_t, 3> counts() const;
  std::vector<std::size_t> indices(SplitPart part) const;

  friend bool operator==(const SplitAssignment&,
                         const SplitAssignment&) = default;
};

// Quartile edges of a list of graph sizes (linear interpolation between
// order statistics).
std::vector<double> size_quartile_edges(std::vector<std::size_t> sizes);

// 70/20/10 split stratified by class x node-count quartile. Part sizes are
// the largest-remainder apportionment of the sample count (train wins ties,
// then valid); each stratum receives the floor of its share or one more.
// Strata are shuffled with a seeded Mersenne Twister (portable Fisher-Yates,
// not std::shuffle). Throws InputError with fewer than 10 samples.
SplitAssignment stratified_split(const XaiBenchmark& bench,
                                 std::uint64_t seed);

}  // namespace wlbench

#endif  // WLBENCH_SPLITTER_H_
