//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "wlbench/wl.h"

#include <algorithm>
#include <map>

#include "wlbench/error.h"

namespace wlbench {

std::string to_string(const WlColor& c) {
  return std::to_string(c.iteration) + ":" + std::to_string(c.id);
}

std::size_t ColorTable::KeyHash::operator()(
    const std::vector<std::uint32_t>& key) const {
  // FNV-1a over the words; equality is still checked by the map.
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint32_t w : key) {
    h ^= w;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

ColorTable::ColorTable(std::vector<RawLabel> label_alphabet)
    : alphabet_(std::move(label_alphabet)), keys_(1), interners_(1) {}

std::size_t ColorTable::color_count(std::size_t iteration) const {
  return iteration < keys_.size() ? keys_[iteration].size() : 0;
}

std::size_t ColorTable::total_colors() const {
  std::size_t n = 0;
  for (const auto& k : keys_) n += k.size();
  return n;
}

void ColorTable::check(const WlColor& c) const {
  if (c.iteration >= keys_.size() || c.id >= keys_[c.iteration].size()) {
    throw InputError("color " + to_string(c) + " not in table");
  }
}

std::optional<WlColor> ColorTable::parent(const WlColor& c) const {
  check(c);
  if (c.iteration == 0) return std::nullopt;
  return WlColor{c.iteration - 1, keys_[c.iteration][c.id][0]};
}

std::vector<WlColor> ColorTable::neighbor_colors(const WlColor& c) const {
  check(c);
  std::vector<WlColor> out;
  if (c.iteration == 0) return out;
  const auto& key = keys_[c.iteration][c.id];
  for (std::size_t i = 1; i < key.size(); ++i) {
    out.push_back({c.iteration - 1, key[i]});
  }
  return out;
}

RawLabel ColorTable::raw_label(const WlColor& c) const {
  check(c);
  if (c.iteration != 0) {
    throw InputError("raw_label requires an iteration-0 color, got " +
                     to_string(c));
  }
  return alphabet_.at(keys_[0][c.id][0]);
}

std::vector<std::string> ColorTable::canonical_keys(
    std::size_t iteration) const {
  if (iteration >= keys_.size()) {
    throw InputError("iteration " + std::to_string(iteration) +
                     " not in table");
  }
  std::vector<std::string> level(keys_[0].size());
  for (std::size_t id = 0; id < level.size(); ++id) {
    level[id] = std::to_string(alphabet_.at(keys_[0][id][0]));
  }
  for (std::size_t l = 1; l <= iteration; ++l) {
    std::vector<std::string> next(keys_[l].size());
    std::vector<const std::string*> children;
    for (std::size_t id = 0; id < next.size(); ++id) {
      const auto& key = keys_[l][id];
      children.clear();
      for (std::size_t i = 1; i < key.size(); ++i) {
        children.push_back(&level[key[i]]);
      }
      std::sort(children.begin(), children.end(),
                [](const std::string* a, const std::string* b) {
                  return *a < *b;
                });
      std::string s = level[key[0]];
      s += '(';
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i > 0) s += ',';
        s += *children[i];
      }
      s += ')';
      next[id] = std::move(s);
    }
    level = std::move(next);
  }
  return level;
}

std::string ColorTable::canonical_key(const WlColor& c) const {
  check(c);
  if (c.iteration == 0) return std::to_string(alphabet_.at(keys_[0][c.id][0]));
  const auto& key = keys_[c.iteration][c.id];
  std::vector<std::string> children;
  children.reserve(key.size() - 1);
  for (std::size_t i = 1; i < key.size(); ++i) {
    children.push_back(canonical_key({c.iteration - 1, key[i]}));
  }
  std::sort(children.begin(), children.end());
  std::string s = canonical_key({c.iteration - 1, key[0]});
  s += '(';
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0) s += ',';
    s += children[i];
  }
  s += ')';
  return s;
}

std::optional<WlColor> ColorTable::find(std::size_t iteration,
                                        const std::string& key) const {
  if (iteration >= keys_.size()) return std::nullopt;
  auto keys = canonical_keys(iteration);
  for (std::size_t id = 0; id < keys.size(); ++id) {
    if (keys[id] == key) {
      return WlColor{static_cast<std::uint32_t>(iteration),
                     static_cast<std::uint32_t>(id)};
    }
  }
  return std::nullopt;
}

WlColor ColorTable::intern_label(LabelId label) {
  if (label >= alphabet_.size()) {
    throw InputError("node label id " + std::to_string(label) +
                     " outside alphabet");
  }
  std::vector<std::uint32_t> key{label};
  auto [it, inserted] = interners_[0].try_emplace(
      key, static_cast<std::uint32_t>(keys_[0].size()));
  if (inserted) keys_[0].push_back(std::move(key));
  return {0, it->second};
}

WlColor ColorTable::intern_refined(
    std::uint32_t iteration, std::uint32_t parent_id,
    std::span<const std::uint32_t> sorted_neighbors) {
  if (iteration == 0 || iteration > keys_.size()) {
    throw InputError("cannot intern iteration " + std::to_string(iteration) +
                     " into a table with " + std::to_string(keys_.size()) +
                     " iteration(s)");
  }
  if (iteration == keys_.size()) {
    keys_.emplace_back();
    interners_.emplace_back();
  }
  std::vector<std::uint32_t> key;
  key.reserve(sorted_neighbors.size() + 1);
  key.push_back(parent_id);
  key.insert(key.end(), sorted_neighbors.begin(), sorted_neighbors.end());
  auto [it, inserted] = interners_[iteration].try_emplace(
      key, static_cast<std::uint32_t>(keys_[iteration].size()));
  if (inserted) keys_[iteration].push_back(std::move(key));
  return {iteration, it->second};
}

WlColoring::WlColoring(std::size_t node_count, std::size_t iterations)
    : node_count_(node_count),
      rows_(iterations, std::vector<std::uint32_t>(node_count, 0)) {}

std::vector<NodeIndex> WlColoring::nodes_with(const WlColor& c) const {
  std::vector<NodeIndex> out;
  if (c.iteration >= rows_.size()) return out;
  const auto& row = rows_[c.iteration];
  for (std::size_t v = 0; v < row.size(); ++v) {
    if (row[v] == c.id) out.push_back(static_cast<NodeIndex>(v));
  }
  return out;
}

WlHistogram::WlHistogram(std::vector<std::pair<WlColor, std::size_t>> counts)
    : counts_(std::move(counts)) {
  std::sort(counts_.begin(), counts_.end());
  // Merge repeated colors.
  std::vector<std::pair<WlColor, std::size_t>> merged;
  for (const auto& [c, n] : counts_) {
    if (!merged.empty() && merged.back().first == c) {
      merged.back().second += n;
    } else if (n > 0) {
      merged.emplace_back(c, n);
    }
  }
  counts_ = std::move(merged);
}

std::size_t WlHistogram::count(const WlColor& c) const {
  auto it = std::lower_bound(
      counts_.begin(), counts_.end(), c,
      [](const auto& entry, const WlColor& key) { return entry.first < key; });
  return (it != counts_.end() && it->first == c) ? it->second : 0;
}

std::size_t WlHistogram::total() const {
  std::size_t n = 0;
  for (const auto& e : counts_) n += e.second;
  return n;
}

Refinement refine(const Dataset& dataset, std::size_t iterations) {
  Refinement out{ColorTable(dataset.label_alphabet), {}};
  out.colorings.reserve(dataset.size());
  for (const auto& g : dataset.graphs) {
    WlColoring coloring(g->node_count(), iterations + 1);
    auto row = coloring.mutable_row(0);
    for (std::size_t v = 0; v < g->node_count(); ++v) {
      row[v] = out.table.intern_label(g->label(static_cast<NodeIndex>(v))).id;
    }
    out.colorings.push_back(std::move(coloring));
  }

  std::vector<std::uint32_t> neighbor_ids;
  for (std::size_t l = 1; l <= iterations; ++l) {
    for (std::size_t gi = 0; gi < dataset.size(); ++gi) {
      const Graph& g = dataset.graph(gi);
      WlColoring& coloring = out.colorings[gi];
      auto prev = coloring.row(l - 1);
      auto cur = coloring.mutable_row(l);
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        neighbor_ids.clear();
        for (NodeIndex u : g.neighbors(static_cast<NodeIndex>(v))) {
          neighbor_ids.push_back(prev[u]);
        }
        std::sort(neighbor_ids.begin(), neighbor_ids.end());
        cur[v] = out.table
                     .intern_refined(static_cast<std::uint32_t>(l), prev[v],
                                     neighbor_ids)
                     .id;
      }
    }
  }
  return out;
}

WlHistogram histogram(const WlColoring& coloring) {
  std::vector<std::pair<WlColor, std::size_t>> counts;
  for (std::size_t l = 0; l < coloring.iterations(); ++l) {
    std::map<std::uint32_t, std::size_t> row_counts;
    for (std::uint32_t id : coloring.row(l)) ++row_counts[id];
    for (const auto& [id, n] : row_counts) {
      counts.push_back({{static_cast<std::uint32_t>(l), id}, n});
    }
  }
  return WlHistogram(std::move(counts));
}

std::vector<std::pair<std::string, std::size_t>> canonical_histogram(
    const ColorTable& table, const WlHistogram& h) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& [c, n] : h.entries()) {
    out.emplace_back(std::to_string(c.iteration) + "|" + table.canonical_key(c),
                     n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wlbench
