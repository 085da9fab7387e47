//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures and independent oracles for the unit and acceptance tests.
// Oracles deliberately avoid the library's own algorithms.

#ifndef WLBENCH_TESTS_FIXTURES_H_
#define WLBENCH_TESTS_FIXTURES_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "wlbench/dataset.h"
#include "wlbench/generator.h"
#include "wlbench/graph.h"
#include "wlbench/wl.h"

namespace wlbench::testing {

inline std::shared_ptr<const Graph> make_graph(std::vector<LabelId> labels,
                                               std::vector<Edge> edges,
                                               std::string id = {}) {
  return std::make_shared<const Graph>(std::move(labels), std::move(edges),
                                       std::move(id));
}

inline Dataset make_dataset(std::vector<std::shared_ptr<const Graph>> graphs,
                            std::vector<ClassId> labels,
                            std::vector<RawLabel> alphabet,
                            std::string name = "toy") {
  Dataset d;
  d.name = std::move(name);
  d.graphs = std::move(graphs);
  d.labels = std::move(labels);
  d.label_alphabet = std::move(alphabet);
  return d;
}

// Label ids of the 4-graph toy set.
inline constexpr LabelId kA = 0, kX = 1, kY = 2;

// G1: class 0 path X-A; G2: class 0 path X-Y; G3: class 1 single Y;
// G4: class 1 path A-A.
inline Dataset toy_dataset() {
  return make_dataset({make_graph({kX, kA}, {{0, 1}}, "G1"),
                       make_graph({kX, kY}, {{0, 1}}, "G2"),
                       make_graph({kY}, {}, "G3"),
                       make_graph({kA, kA}, {{0, 1}}, "G4")},
                      {0, 0, 1, 1}, {10, 11, 12});
}

inline std::vector<Edge> cycle_edges(NodeIndex n, NodeIndex offset = 0) {
  std::vector<Edge> e;
  for (NodeIndex i = 0; i < n; ++i) {
    e.push_back({offset + i, offset + (i + 1) % n});
  }
  return e;
}

// Random spanning tree plus extra edges with probability p.
inline std::shared_ptr<const Graph> random_connected_graph(
    std::mt19937_64& rng, std::size_t n, std::size_t labels, double p,
    std::string id = {}) {
  std::vector<LabelId> lab(n);
  std::uniform_int_distribution<LabelId> ld(0, static_cast<LabelId>(labels - 1));
  for (auto& l : lab) l = ld(rng);
  std::set<Edge> edges;
  for (NodeIndex v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeIndex> pd(0, v - 1);
    edges.insert({pd(rng), v});
  }
  std::bernoulli_distribution extra(p);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (extra(rng)) edges.insert({u, v});
    }
  }
  return make_graph(std::move(lab), {edges.begin(), edges.end()},
                    std::move(id));
}

// Possibly disconnected.
inline std::shared_ptr<const Graph> random_graph(std::mt19937_64& rng,
                                                 std::size_t n,
                                                 std::size_t labels, double p,
                                                 std::string id = {}) {
  std::vector<LabelId> lab(n);
  std::uniform_int_distribution<LabelId> ld(0, static_cast<LabelId>(labels - 1));
  for (auto& l : lab) l = ld(rng);
  std::vector<Edge> edges;
  std::bernoulli_distribution keep(p);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (keep(rng)) edges.push_back({u, v});
    }
  }
  return make_graph(std::move(lab), std::move(edges), std::move(id));
}

// Random binary dataset with both classes present.
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t max_graphs,
                              std::size_t max_nodes, std::size_t labels) {
  std::uniform_int_distribution<std::size_t> gd(4, max_graphs);
  std::uniform_int_distribution<std::size_t> nd(1, max_nodes);
  std::uniform_real_distribution<double> pd(0.1, 0.5);
  std::size_t g = gd(rng);
  std::vector<std::shared_ptr<const Graph>> graphs;
  std::vector<ClassId> y;
  for (std::size_t i = 0; i < g; ++i) {
    graphs.push_back(random_graph(rng, nd(rng), labels, pd(rng),
                                  std::to_string(i + 1)));
    y.push_back(static_cast<ClassId>(rng() % 2));
  }
  y[0] = 0;
  y[1] = 1;
  std::vector<RawLabel> alphabet(labels);
  std::iota(alphabet.begin(), alphabet.end(), RawLabel{0});
  return make_dataset(std::move(graphs), std::move(y), std::move(alphabet),
                      "random");
}

// Naive WL: colors are full strings (own label plus sorted neighbor strings),
// compared by value. Returns per-iteration partitions of (graph, node) pairs
// as canonical group-id vectors, first-encounter numbering.
using Partition = std::vector<std::vector<std::size_t>>;

inline std::vector<Partition> naive_wl_partitions(const Dataset& d,
                                                  std::size_t iterations) {
  std::vector<std::vector<std::string>> s(d.size());
  for (std::size_t g = 0; g < d.size(); ++g) {
    const Graph& G = d.graph(g);
    for (NodeIndex v = 0; v < G.node_count(); ++v) {
      s[g].push_back(std::to_string(d.label_alphabet[G.label(v)]));
    }
  }
  auto snapshot = [&] {
    std::map<std::string, std::size_t> ids;
    Partition p(d.size());
    for (std::size_t g = 0; g < d.size(); ++g) {
      for (const auto& str : s[g]) {
        auto [it, _] = ids.emplace(str, ids.size());
        p[g].push_back(it->second);
      }
    }
    return p;
  };
  std::vector<Partition> out{snapshot()};
  for (std::size_t l = 1; l <= iterations; ++l) {
    std::vector<std::vector<std::string>> next(d.size());
    for (std::size_t g = 0; g < d.size(); ++g) {
      const Graph& G = d.graph(g);
      // Adjacency from the raw edge list, not the library's CSR.
      std::vector<std::vector<NodeIndex>> adj(G.node_count());
      for (auto [u, v] : G.edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      for (NodeIndex v = 0; v < G.node_count(); ++v) {
        std::vector<std::string> nb;
        for (NodeIndex u : adj[v]) nb.push_back(s[g][u]);
        std::sort(nb.begin(), nb.end());
        std::string key = s[g][v] + "{";
        for (const auto& x : nb) key += x + ";";
        next[g].push_back(key + "}");
      }
    }
    s = std::move(next);
    out.push_back(snapshot());
  }
  return out;
}

// First-encounter renumbering of the library coloring, same traversal as the
// oracle.
inline Partition library_partition(const Refinement& r, std::size_t iteration) {
  std::map<std::uint32_t, std::size_t> ids;
  Partition p(r.colorings.size());
  for (std::size_t g = 0; g < r.colorings.size(); ++g) {
    for (std::uint32_t c : r.colorings[g].row(iteration)) {
      auto [it, _] = ids.emplace(c, ids.size());
      p[g].push_back(it->second);
    }
  }
  return p;
}

// All-pairs hop distances (Floyd-Warshall), unreachable = large.
inline std::vector<std::vector<std::size_t>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  const std::size_t inf = n + 100;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Canonical keys present in each graph at one iteration. Only the key
// lookup comes from the library; the filter below does not use the generator.
inline std::vector<std::set<std::string>> key_sets(const Refinement& r,
                                                   std::size_t iteration) {
  auto keys = r.table.canonical_keys(iteration);
  std::vector<std::set<std::string>> out(r.colorings.size());
  for (std::size_t g = 0; g < r.colorings.size(); ++g) {
    for (std::uint32_t c : r.colorings[g].row(iteration)) out[g].insert(keys[c]);
  }
  return out;
}

// Expected (source_index, y, mask) triples for a benchmark, recomputed from
// membership predicates with BFS masks.
struct ExpectedSample {
  std::size_t source_index;
  ClassId y;
  std::set<NodeIndex> mask;
  friend bool operator==(const ExpectedSample&, const ExpectedSample&) = default;
};

inline std::vector<ExpectedSample> brute_force_samples(
    const Dataset& d, const Refinement& r, const XaiBenchmark& b) {
  auto has = [&](std::size_t g, const MotifSpec& m) {
    return key_sets(r, m.iteration)[g].count(m.canonical_key) > 0;
  };
  auto mask_of = [&](std::size_t g, const MotifSpec& m) {
    const Graph& G = d.graph(g);
    auto keys = r.table.canonical_keys(m.iteration);
    auto dist = floyd_warshall(G);
    std::set<NodeIndex> out;
    for (NodeIndex v = 0; v < G.node_count(); ++v) {
      if (keys[r.colorings[g].row(m.iteration)[v]] != m.canonical_key) continue;
      for (NodeIndex u = 0; u < G.node_count(); ++u) {
        if (dist[v][u] <= m.iteration) out.insert(u);
      }
    }
    return out;
  };
  std::vector<ExpectedSample> out;
  for (std::size_t g = 0; g < d.size(); ++g) {
    ClassId y = d.labels[g];
    if (b.mode == BenchmarkMode::kTwoMotif) {
      const MotifSpec& mine = b.motifs[y == 0 ? 0 : 1];
      const MotifSpec& other = b.motifs[y == 0 ? 1 : 0];
      if (has(g, mine) && !has(g, other)) {
        out.push_back({g, y, mask_of(g, mine)});
      }
    } else {
      const MotifSpec& m = b.motifs[0];
      ClassId owner = b.mode == BenchmarkMode::kSingleMotifClass0 ? 0 : 1;
      if (y == owner && has(g, m)) out.push_back({g, y, mask_of(g, m)});
      if (y != owner && !has(g, m)) out.push_back({g, y, {}});
    }
  }
  return out;
}

inline std::vector<ExpectedSample> actual_samples(const XaiBenchmark& b) {
  std::vector<ExpectedSample> out;
  for (const auto& s : b.samples) {
    out.push_back({s.source_index, s.y, {s.mask.begin(), s.mask.end()}});
  }
  return out;
}

// Pairwise count, no sorting.
inline double brute_force_auc(const std::vector<double>& scores,
                              const std::set<NodeIndex>& gt) {
  double num = 0.0;
  double pairs = 0.0;
  for (std::size_t p = 0; p < scores.size(); ++p) {
    if (!gt.count(static_cast<NodeIndex>(p))) continue;
    for (std::size_t q = 0; q < scores.size(); ++q) {
      if (gt.count(static_cast<NodeIndex>(q))) continue;
      pairs += 1.0;
      if (scores[p] > scores[q]) num += 1.0;
      if (scores[p] == scores[q]) num += 0.5;
    }
  }
  return num / pairs;
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("wlbench_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const {
    return path_ / s;
  }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Published mean plausibility of five explainers, one row per task class.
inline const std::vector<std::string>& reference_methods() {
  static const std::vector<std::string> m{"Random", "Saliency", "IntGrad",
                                          "CAM", "GNNExpl"};
  return m;
}

inline const std::vector<std::pair<std::string, std::vector<double>>>&
reference_rows() {
  static const std::vector<std::pair<std::string, std::vector<double>>> r{
      {"alfa/0", {.524, .135, .921, .942, .673}},
      {"alfa/1", {.481, .406, .616, .642, .450}},
      {"bravo/0", {.516, .361, .597, .697, .637}},
      {"bravo/1", {.502, .702, .500, .988, .767}},
      {"charlie/0", {.501, .924, 1.000, .883, .643}},
      {"charlie/1", {.489, .330, .406, .599, .385}},
      {"delta/0", {.485, .112, .448, .900, .494}},
      {"delta/1", {.492, .223, .460, .898, .520}},
      {"echo/0", {.484, .090, .726, .856, .670}},
      {"echo/1", {.495, .584, .526, .706, .431}},
      {"foxtrot/1", {.491, .181, .743, .930, .527}},
      {"golf/0", {.519, .039, .681, .683, .874}},
      {"hotel/0", {.431, .190, .482, .871, .486}},
      {"india/0", {.480, .245, .633, .918, .509}},
      {"juliett/0", {.464, .494, .606, .844, .540}},
      {"kilo/0", {.510, .796, .833, .947, .570}},
      {"lima/0", {.502, .123, .764, .955, .575}},
      {"mike/0", {.497, .138, .678, .840, .332}},
      {"november/0", {.531, .018, .603, 1.000, .408}},
      {"oscar/0", {.490, .183, .938, .973, .501}},
  };
  return r;
}

}  // namespace wlbench::testing

#endif  // WLBENCH_TESTS_FIXTURES_H_
