//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_GRAPH_H_
#define WLBENCH_GRAPH_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wlbench {

using NodeIndex = std::uint32_t;
using LabelId = std::uint32_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

// Sorted, duplicate-free set of node indices of one graph.
class NodeSet {
 public:
  NodeSet() = default;
  // Sorts and deduplicates.
  explicit NodeSet(std::vector<NodeIndex> nodes);
  NodeSet(std::initializer_list<NodeIndex> nodes);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeIndex v) const;
  std::span<const NodeIndex> nodes() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }
  NodeIndex operator[](std::size_t i) const { return nodes_[i]; }

  NodeSet united(const NodeSet& other) const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeIndex> nodes_;
};

// Immutable simple undirected graph with one discrete label per node.
//
// Edges are stored once as (u, v) with u < v, sorted. Adjacency is kept in
// CSR form so neighbors(v) is a contiguous, ascending span.
class Graph {
 public:
  // Throws InputError on an empty graph, an out-of-range endpoint, a
  // self-loop, or a duplicate edge ((u, v) and (v, u) count as the same).
  Graph(std::vector<LabelId> node_labels, std::vector<Edge> edges,
        std::string id = {});

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const LabelId> labels() const { return labels_; }
  LabelId label(NodeIndex v) const { return labels_[v]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeIndex> neighbors(NodeIndex v) const;
  std::size_t degree(NodeIndex v) const { return neighbors(v).size(); }
  const std::string& id() const { return id_; }

  bool has_node(std::size_t v) const { return v < labels_.size(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_ && a.id_ == b.id_;
  }

 private:
  std::vector<LabelId> labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> adjacency_;
  std::string id_;
};

// Nodes at shortest-path distance <= radius from v (the radius-r ego graph).
NodeSet ego_nodes(const Graph& g, NodeIndex v, std::size_t radius);

// Union of ego_nodes(g, v, radius) over every v in centers.
NodeSet ego_union(const Graph& g, std::span<const NodeIndex> centers,
                  std::size_t radius);

// Maximal connected components, each sorted; components ordered by their
// smallest node.
std::vector<NodeSet> connected_components(const Graph& g);

// Components of the subgraph induced by `nodes`.
std::vector<NodeSet> induced_components(const Graph& g, const NodeSet& nodes);

}  // namespace wlbench

#endif  // WLBENCH_GRAPH_H_
