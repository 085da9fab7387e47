//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_WL_H_
#define WLBENCH_WL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wlbench/dataset.h"

namespace wlbench {

// A WL color: dense id within the color set of one refinement iteration.
// Colors of different iterations never compare equal.
struct WlColor {
  std::uint32_t iteration = 0;
  std::uint32_t id = 0;

  friend auto operator<=>(const WlColor&, const WlColor&) = default;
};

std::string to_string(const WlColor& c);

// Exact interning table shared by all graphs of one refine() call.
//
// Iteration 0 interns node labels. Iteration l > 0 interns the pair
// (own color at l-1, sorted neighbor colors at l-1), the standard 1-WL
// update. Ids are assigned in order of first encounter while scanning graphs
// and then nodes in index order, so a fixed dataset always yields the same
// ids. Ids are not comparable across tables; use canonical_key() for that.
class ColorTable {
 public:
  explicit ColorTable(std::vector<RawLabel> label_alphabet);

  std::size_t iterations() const { return keys_.size(); }
  std::size_t color_count(std::size_t iteration) const;
  std::size_t total_colors() const;

  // Parent color and sorted neighbor colors the given color was refined from.
  // Empty neighbor list and no parent for iteration 0.
  std::optional<WlColor> parent(const WlColor& c) const;
  std::vector<WlColor> neighbor_colors(const WlColor& c) const;
  // Raw dataset label for an iteration-0 color.
  RawLabel raw_label(const WlColor& c) const;

  // Recursive expansion of a color down to raw node labels. Iteration 0 is the
  // raw label ("6"); iteration l is parent_key + "(" + sorted neighbor keys
  // joined by "," + ")". Equal strings denote the same unfolding tree, so
  // keys are comparable across tables built from different runs.
  std::string canonical_key(const WlColor& c) const;
  // All keys of one iteration, indexed by color id.
  std::vector<std::string> canonical_keys(std::size_t iteration) const;
  std::optional<WlColor> find(std::size_t iteration,
                              const std::string& canonical_key) const;

  // Interning entry points used by refine().
  WlColor intern_label(LabelId label);
  WlColor intern_refined(std::uint32_t iteration, std::uint32_t parent_id,
                         std::span<const std::uint32_t> sorted_neighbors);

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };
  using Interner =
      std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash>;

  void check(const WlColor& c) const;

  std::vector<RawLabel> alphabet_;
  // keys_[l][id] = {parent id, neighbor ids...} (for l = 0: {dense label}).
  std::vector<std::vector<std::vector<std::uint32_t>>> keys_;
  std::vector<Interner> interners_;
};

// Colors of one graph: row l holds the iteration-l color id of every node.
class WlColoring {
 public:
  WlColoring() = default;
  WlColoring(std::size_t node_count, std::size_t iterations);

  std::size_t iterations() const { return rows_.size(); }
  std::size_t node_count() const { return node_count_; }
  std::span<const std::uint32_t> row(std::size_t iteration) const {
    return rows_[iteration];
  }
  std::span<std::uint32_t> mutable_row(std::size_t iteration) {
    return rows_[iteration];
  }
  WlColor color(std::size_t iteration, NodeIndex v) const {
    return {static_cast<std::uint32_t>(iteration), rows_[iteration][v]};
  }
  // Nodes whose iteration-c.iteration color equals c, ascending.
  std::vector<NodeIndex> nodes_with(const WlColor& c) const;

  friend bool operator==(const WlColoring&, const WlColoring&) = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<std::vector<std::uint32_t>> rows_;
};

// Multiset of a graph's colors over iterations 0..L, sorted by color.
class WlHistogram {
 public:
  WlHistogram() = default;
  explicit WlHistogram(std::vector<std::pair<WlColor, std::size_t>> counts);

  std::span<const std::pair<WlColor, std::size_t>> entries() const {
    return counts_;
  }
  std::size_t distinct() const { return counts_.size(); }
  std::size_t count(const WlColor& c) const;
  bool contains(const WlColor& c) const { return count(c) > 0; }
  std::size_t total() const;

  friend bool operator==(const WlHistogram&, const WlHistogram&) = default;

 private:
  std::vector<std::pair<WlColor, std::size_t>> counts_;
};

struct Refinement {
  ColorTable table;
  std::vector<WlColoring> colorings;
};

// Runs `iterations` rounds of 1-WL over every graph of the dataset with one
// shared color table. Each coloring has iterations + 1 rows.
Refinement refine(const Dataset& dataset, std::size_t iterations);

WlHistogram histogram(const WlColoring& coloring);

// Cross-table comparable form of a histogram: canonical key -> count.
std::vector<std::pair<std::string, std::size_t>> canonical_histogram(
    const ColorTable& table, const WlHistogram& h);

}  // namespace wlbench

#endif  // WLBENCH_WL_H_
