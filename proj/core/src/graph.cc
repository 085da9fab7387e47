//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "wlbench/graph.h"

#include <algorithm>
#include <deque>
#include <numeric>

#include "wlbench/error.h"

namespace wlbench {

NodeSet::NodeSet(std::vector<NodeIndex> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

NodeSet::NodeSet(std::initializer_list<NodeIndex> nodes)
    : NodeSet(std::vector<NodeIndex>(nodes)) {}

bool NodeSet::contains(NodeIndex v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

NodeSet NodeSet::united(const NodeSet& other) const {
  NodeSet out;
  out.nodes_.reserve(nodes_.size() + other.nodes_.size());
  std::set_union(nodes_.begin(), nodes_.end(), other.nodes_.begin(),
                 other.nodes_.end(), std::back_inserter(out.nodes_));
  return out;
}

Graph::Graph(std::vector<LabelId> node_labels, std::vector<Edge> edges,
             std::string id)
    : labels_(std::move(node_labels)), edges_(std::move(edges)),
      id_(std::move(id)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InputError("graph '" + id_ + "' has no nodes");
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n) {
      throw InputError("graph '" + id_ + "': edge (" + std::to_string(u) +
                       ", " + std::to_string(v) + ") out of range for " +
                       std::to_string(n) + " nodes");
    }
    if (u == v) {
      throw InputError("graph '" + id_ + "': self-loop on node " +
                       std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw InputError("graph '" + id_ + "': duplicate edge (" +
                     std::to_string(dup->first) + ", " +
                     std::to_string(dup->second) + ")");
  }

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges_) {
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v],
              adjacency_.begin() + offsets_[v + 1]);
  }
}

std::span<const NodeIndex> Graph::neighbors(NodeIndex v) const {
  return std::span<const NodeIndex>(adjacency_)
      .subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

namespace {

void check_node(const Graph& g, NodeIndex v) {
  if (!g.has_node(v)) {
    throw InputError("node " + std::to_string(v) + " not in graph '" +
                     g.id() + "' (" + std::to_string(g.node_count()) +
                     " nodes)");
  }
}

// Multi-source BFS bounded by radius; marks visited nodes in `seen`.
void bounded_bfs(const Graph& g, std::span<const NodeIndex> sources,
                 std::size_t radius, std::vector<char>& seen,
                 std::vector<NodeIndex>& out) {
  std::vector<NodeIndex> frontier;
  for (NodeIndex s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      frontier.push_back(s);
      out.push_back(s);
    }
  }
  std::vector<NodeIndex> next;
  for (std::size_t depth = 0; depth < radius && !frontier.empty(); ++depth) {
    next.clear();
    for (NodeIndex u : frontier) {
      for (NodeIndex w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
          out.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
}

}  // namespace

NodeSet ego_nodes(const Graph& g, NodeIndex v, std::size_t radius) {
  check_node(g, v);
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeIndex> out;
  const NodeIndex source[] = {v};
  bounded_bfs(g, source, radius, seen, out);
  return NodeSet(std::move(out));
}

NodeSet ego_union(const Graph& g, std::span<const NodeIndex> centers,
                  std::size_t radius) {
  for (NodeIndex v : centers) check_node(g, v);
  // A multi-source BFS reaches exactly the nodes within `radius` of some
  // center, which is the union of the individual ego graphs.
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeIndex> out;
  bounded_bfs(g, centers, radius, seen, out);
  return NodeSet(std::move(out));
}

std::vector<NodeSet> connected_components(const Graph& g) {
  std::vector<NodeIndex> all(g.node_count());
  std::iota(all.begin(), all.end(), NodeIndex{0});
  return induced_components(g, NodeSet(std::move(all)));
}

std::vector<NodeSet> induced_components(const Graph& g, const NodeSet& nodes) {
  std::vector<char> inside(g.node_count(), 0);
  for (NodeIndex v : nodes) {
    check_node(g, v);
    inside[v] = 1;
  }
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeSet> components;
  std::deque<NodeIndex> queue;
  for (NodeIndex start : nodes) {
    if (seen[start]) continue;
    std::vector<NodeIndex> component;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      NodeIndex u = queue.front();
      queue.pop_front();
      component.push_back(u);
      for (NodeIndex w : g.neighbors(u)) {
        if (inside[w] && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    components.emplace_back(std::move(component));
  }
  return components;
}

}  // namespace wlbench
