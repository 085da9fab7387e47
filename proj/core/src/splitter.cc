//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "wlbench/splitter.h"

#include <algorithm>
#include <map>
#include <random>

#include "portable_random.h"
#include "wlbench/error.h"

namespace wlbench {

std::string to_string(SplitPart part) {
  switch (part) {
    case SplitPart::kTrain:
      return "train";
    case SplitPart::kValid:
      return "valid";
    case SplitPart::kTest:
      return "test";
  }
  return "unknown";
}

SplitPart parse_split_part(const std::string& s) {
  if (s == "train") return SplitPart::kTrain;
  if (s == "valid") return SplitPart::kValid;
  if (s == "test") return SplitPart::kTest;
  throw FormatError("unknown split '" + s + "'");
}

std::array<std::size_t, 3> SplitAssignment::counts() const {
  std::array<std::size_t, 3> c{0, 0, 0};
  for (SplitPart p : parts) ++c[static_cast<std::size_t>(p)];
  return c;
}

std::vector<std::size_t> SplitAssignment::indices(SplitPart part) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == part) out.push_back(i);
  }
  return out;
}

std::vector<double> size_quartile_edges(std::vector<std::size_t> sizes) {
  if (sizes.empty()) return {};
  std::sort(sizes.begin(), sizes.end());
  std::vector<double> edges;
  for (int q = 1; q <= 3; ++q) {
    double pos = (static_cast<double>(sizes.size()) - 1.0) * q / 4.0;
    auto lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    double v = static_cast<double>(sizes[lo]);
    if (lo + 1 < sizes.size()) {
      v += frac * (static_cast<double>(sizes[lo + 1]) - v);
    }
    edges.push_back(v);
  }
  return edges;
}

using internal::draw_below;

SplitAssignment stratified_split(const XaiBenchmark& bench,
                                 std::uint64_t seed) {
  const std::size_t n = bench.samples.size();
  if (n < 10) {
    throw InputError("stratified_split needs at least 10 samples, got " +
                     std::to_string(n));
  }
  SplitAssignment out;
  out.seed = seed;
  out.parts.assign(n, SplitPart::kTrain);

  std::vector<std::size_t> sizes;
  sizes.reserve(n);
  for (const auto& s : bench.samples) sizes.push_back(s.graph->node_count());
  out.size_bin_edges = size_quartile_edges(sizes);

  std::map<std::pair<ClassId, std::size_t>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < n; ++i) {
    auto bin = static_cast<std::size_t>(std::count_if(
        out.size_bin_edges.begin(), out.size_bin_edges.end(),
        [&](double e) { return static_cast<double>(sizes[i]) > e; }));
    strata[{bench.samples[i].y, bin}].push_back(i);
  }

  // Controlled rounding: global part sizes are the largest-remainder
  // apportionment of n, and every stratum gets floor(share) or one more.
  std::vector<std::vector<std::size_t>*> groups;
  for (auto& [key, members] : strata) groups.push_back(&members);
  const std::size_t k = groups.size();
  std::vector<std::array<std::size_t, 3>> quota(k);
  std::vector<std::array<std::size_t, 3>> rem(k);
  std::vector<std::size_t> short_by(k, 0);
  std::array<std::size_t, 3> target{};
  std::array<std::size_t, 3> target_rem{};
  std::array<std::size_t, 3> floors{0, 0, 0};
  for (std::size_t p = 0; p < 3; ++p) {
    target[p] = n * out.ratio_tenths[p] / 10;
    target_rem[p] = n * out.ratio_tenths[p] % 10;
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return target_rem[a] > target_rem[b];
  });
  for (std::size_t i = 0, total = target[0] + target[1] + target[2];
       total < n; ++i, ++total) {
    ++target[order[i]];
  }
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t m = groups[s]->size();
    std::size_t assigned = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      quota[s][p] = m * out.ratio_tenths[p] / 10;
      rem[s][p] = m * out.ratio_tenths[p] % 10;
      assigned += quota[s][p];
      floors[p] += quota[s][p];
    }
    short_by[s] = m - assigned;
  }
  std::array<std::size_t, 3> owed{};
  for (std::size_t p = 0; p < 3; ++p) owed[p] = target[p] - floors[p];

  struct Cell {
    std::size_t s, p;
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t p = 0; p < 3; ++p) cells.push_back({s, p});
  }
  std::stable_sort(cells.begin(), cells.end(), [&](Cell a, Cell b) {
    return rem[a.s][a.p] > rem[b.s][b.p];
  });
  std::vector<std::array<bool, 3>> bumped(k, {false, false, false});
  auto give = [&](Cell c) {
    ++quota[c.s][c.p];
    --short_by[c.s];
    --owed[c.p];
    bumped[c.s][c.p] = true;
  };
  // Largest remainders first, then any open cell, then without the
  // one-extra cap (only reachable in pathological layouts).
  for (int pass = 0; pass < 3; ++pass) {
    for (Cell c : cells) {
      if (short_by[c.s] == 0 || owed[c.p] == 0) continue;
      if (pass == 0 && rem[c.s][c.p] == 0) continue;
      if (pass < 2 && bumped[c.s][c.p]) continue;
      give(c);
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < k; ++s) {
    auto& members = *groups[s];
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[draw_below(rng, i)]);
    }
    std::size_t pos = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t c = 0; c < quota[s][p]; ++c) {
        out.parts[members[pos++]] = static_cast<SplitPart>(p);
      }
    }
  }
  return out;
}

}  // namespace wlbench
