//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "wlbench/generator.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "wlbench/error.h"

namespace wlbench {

ClassFrequency FreqTable::at(const WlColor& c) const {
  auto it = entries.find(c);
  return it == entries.end() ? ClassFrequency{} : it->second;
}

FreqTable class_frequencies(const Dataset& dataset,
                            const std::vector<WlHistogram>& histograms) {
  if (histograms.size() != dataset.size()) {
    throw InputError("class_frequencies: " + std::to_string(histograms.size()) +
                     " histograms for " + std::to_string(dataset.size()) +
                     " graphs");
  }
  FreqTable table;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    ClassId y = dataset.labels[i];
    ++table.class_sizes[y];
    // Histogram entries are distinct colors, so each graph counts once.
    for (const auto& [color, count] : histograms[i].entries()) {
      auto& f = table.entries[color];
      (y == 0 ? f.freq0 : f.freq1) += 1;
    }
  }
  return table;
}

namespace {

struct Ranked {
  WlColor color;
  ClassFrequency freq;
  const std::string* key;
};

std::vector<MotifSpec> take_top(std::vector<Ranked> ranked, ClassId role,
                                std::size_t k) {
  const std::int64_t sign = role == 1 ? 1 : -1;
  auto better = [&](const Ranked& a, const Ranked& b) {
    std::int64_t sa = sign * a.freq.dfreq();
    std::int64_t sb = sign * b.freq.dfreq();
    if (sa != sb) return sa > sb;
    auto abs_a = sa < 0 ? -sa : sa;
    auto abs_b = sb < 0 ? -sb : sb;
    if (abs_a != abs_b) return abs_a > abs_b;
    if (a.freq.of(role) != b.freq.of(role)) {
      return a.freq.of(role) > b.freq.of(role);
    }
    return std::tie(*a.key, a.color.iteration) <
           std::tie(*b.key, b.color.iteration);
  };
  std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end(),
                    better);
  std::vector<MotifSpec> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const Ranked& r = ranked[i];
    MotifSpec m;
    m.iteration = r.color.iteration;
    m.canonical_key = *r.key;
    m.class_role = role;
    m.color = r.color;
    m.frequency = r.freq;
    m.weak = sign * r.freq.dfreq() <= 0;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

CandidateLists top_k_candidates(const FreqTable& table, std::size_t k,
                                const ColorTable& colors) {
  if (k == 0) throw InputError("top_k_candidates: K must be >= 1");
  std::vector<std::vector<std::string>> keys(colors.iterations());
  for (std::size_t l = 0; l < colors.iterations(); ++l) {
    keys[l] = colors.canonical_keys(l);
  }
  std::vector<Ranked> ranked;
  ranked.reserve(table.entries.size());
  for (const auto& [color, freq] : table.entries) {
    if (color.iteration >= keys.size() ||
        color.id >= keys[color.iteration].size()) {
      throw InputError("frequency table color " + to_string(color) +
                       " is not in the color table");
    }
    ranked.push_back({color, freq, &keys[color.iteration][color.id]});
  }
  CandidateLists out;
  out.truncated = ranked.size() < k;
  out.class0 = take_top(ranked, 0, k);
  out.class1 = take_top(std::move(ranked), 1, k);
  return out;
}

NodeSet build_mask(const Graph& g, const WlColoring& coloring,
                   const MotifSpec& motif) {
  if (!motif.color) {
    throw PreconditionError("motif '" + motif.canonical_key +
                            "' is not bound to a color table");
  }
  if (coloring.node_count() != g.node_count()) {
    throw InputError("coloring does not belong to graph '" + g.id() + "'");
  }
  auto centers = coloring.nodes_with(*motif.color);
  if (centers.empty()) {
    throw PreconditionError("motif color " + to_string(*motif.color) +
                            " does not occur in graph '" + g.id() + "'");
  }
  return ego_union(g, centers, motif.color->iteration);
}

std::string to_string(BenchmarkMode mode) {
  switch (mode) {
    case BenchmarkMode::kTwoMotif:
      return "two_motif";
    case BenchmarkMode::kSingleMotifClass0:
      return "single_motif_class0";
    case BenchmarkMode::kSingleMotifClass1:
      return "single_motif_class1";
  }
  return "unknown";
}

BenchmarkMode parse_benchmark_mode(const std::string& s) {
  for (auto m : {BenchmarkMode::kTwoMotif, BenchmarkMode::kSingleMotifClass0,
                 BenchmarkMode::kSingleMotifClass1}) {
    if (to_string(m) == s) return m;
  }
  throw FormatError("unknown benchmark mode '" + s + "'");
}

std::array<std::size_t, 2> XaiBenchmark::class_counts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (const auto& s : samples) ++counts[s.y];
  return counts;
}

double XaiBenchmark::balance() const {
  auto [n0, n1] = class_counts();
  std::size_t hi = std::max(n0, n1);
  if (hi == 0) return 0.0;
  return static_cast<double>(std::min(n0, n1)) / static_cast<double>(hi);
}

const MotifSpec* XaiBenchmark::motif_for(ClassId y) const {
  for (const auto& m : motifs) {
    if (m.class_role == y) return &m;
  }
  return nullptr;
}

std::string XaiBenchmark::canonical_name() const {
  std::string name = to_string(mode);
  for (const auto& m : motifs) {
    name += "|" + std::to_string(m.class_role) + "@" +
            std::to_string(m.iteration) + ":" + m.canonical_key;
  }
  return name;
}

namespace {

void check_aligned(const Dataset& dataset,
                   const std::vector<WlHistogram>& histograms,
                   const std::vector<WlColoring>& colorings) {
  if (histograms.size() != dataset.size() ||
      colorings.size() != dataset.size()) {
    throw InputError("histograms/colorings are not aligned with dataset '" +
                     dataset.name + "'");
  }
}

const WlColor& bound_color(const MotifSpec& m) {
  if (!m.color) {
    throw PreconditionError("motif '" + m.canonical_key +
                            "' is not bound to a color table");
  }
  return *m.color;
}

// Mask per (motif, graph), computed on first use.
class MaskCache {
 public:
  MaskCache(const Dataset& dataset, const std::vector<WlColoring>& colorings)
      : dataset_(dataset), colorings_(colorings) {}

  const NodeSet& get(std::size_t motif_slot, const MotifSpec& m,
                     std::size_t graph) {
    if (motif_slot >= cache_.size()) cache_.resize(motif_slot + 1);
    auto& per_graph = cache_[motif_slot];
    if (per_graph.empty()) per_graph.resize(dataset_.size());
    auto& slot = per_graph[graph];
    if (!slot) {
      slot = build_mask(dataset_.graph(graph), colorings_[graph], m);
    }
    return *slot;
  }

 private:
  const Dataset& dataset_;
  const std::vector<WlColoring>& colorings_;
  std::vector<std::vector<std::optional<NodeSet>>> cache_;
};

XaiBenchmark new_benchmark(const Dataset& dataset, BenchmarkMode mode,
                           std::vector<MotifSpec> motifs) {
  XaiBenchmark b;
  b.source_name = dataset.name;
  b.mode = mode;
  b.motifs = std::move(motifs);
  b.label_alphabet = dataset.label_alphabet;
  return b;
}

GenerationOutcome finish(XaiBenchmark&& b) {
  auto [n0, n1] = b.class_counts();
  if (n0 == 0 || n1 == 0) {
    return {std::nullopt, b.canonical_name() + ": class " +
                              std::string(n0 == 0 ? "0" : "1") +
                              " has no samples (degenerate task)"};
  }
  return {std::move(b), {}};
}

// Slot ids let the enumerator share the cache across pairs; one-off calls
// use slots 0 and 1 of a private cache.
GenerationOutcome two_motif_impl(const Dataset& dataset,
                                 const std::vector<WlHistogram>& histograms,
                                 const MotifSpec& m0, std::size_t slot0,
                                 const MotifSpec& m1, std::size_t slot1,
                                 MaskCache& cache) {
  const WlColor& c0 = bound_color(m0);
  const WlColor& c1 = bound_color(m1);
  if (c0 == c1) {
    throw PreconditionError("two-motif benchmark needs distinct motifs");
  }
  MotifSpec a = m0;
  MotifSpec b = m1;
  a.class_role = 0;
  b.class_role = 1;
  XaiBenchmark bench =
      new_benchmark(dataset, BenchmarkMode::kTwoMotif, {a, b});
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const bool has0 = histograms[i].contains(c0);
    const bool has1 = histograms[i].contains(c1);
    const ClassId y = dataset.labels[i];
    if (y == 0 && has0 && !has1) {
      bench.samples.push_back(
          {dataset.graphs[i], i, 0, cache.get(slot0, a, i)});
    } else if (y == 1 && has1 && !has0) {
      bench.samples.push_back(
          {dataset.graphs[i], i, 1, cache.get(slot1, b, i)});
    }
  }
  return finish(std::move(bench));
}

GenerationOutcome single_motif_impl(const Dataset& dataset,
                                    const std::vector<WlHistogram>& histograms,
                                    const MotifSpec& m, std::size_t slot,
                                    ClassId y, MaskCache& cache) {
  if (y != 0 && y != 1) throw InputError("class must be 0 or 1");
  const WlColor& c = bound_color(m);
  MotifSpec owned = m;
  owned.class_role = y;
  XaiBenchmark bench = new_benchmark(
      dataset,
      y == 0 ? BenchmarkMode::kSingleMotifClass0
             : BenchmarkMode::kSingleMotifClass1,
      {owned});
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const bool has = histograms[i].contains(c);
    const ClassId yi = dataset.labels[i];
    if (yi == y && has) {
      bench.samples.push_back(
          {dataset.graphs[i], i, y, cache.get(slot, owned, i)});
    } else if (yi != y && !has) {
      bench.samples.push_back({dataset.graphs[i], i, yi, NodeSet{}});
    }
  }
  return finish(std::move(bench));
}

}  // namespace

GenerationOutcome generate_two_motif(const Dataset& dataset,
                                     const std::vector<WlHistogram>& histograms,
                                     const std::vector<WlColoring>& colorings,
                                     const MotifSpec& m0,
                                     const MotifSpec& m1) {
  check_aligned(dataset, histograms, colorings);
  MaskCache cache(dataset, colorings);
  return two_motif_impl(dataset, histograms, m0, 0, m1, 1, cache);
}

GenerationOutcome generate_single_motif(
    const Dataset& dataset, const std::vector<WlHistogram>& histograms,
    const std::vector<WlColoring>& colorings, const MotifSpec& m, ClassId y) {
  check_aligned(dataset, histograms, colorings);
  MaskCache cache(dataset, colorings);
  return single_motif_impl(dataset, histograms, m, 0, y, cache);
}

EnumerationReport enumerate_benchmarks(const Dataset& dataset,
                                       std::size_t iterations, std::size_t k,
                                       const BenchmarkSink& sink) {
  dataset.validate();
  if (k == 0) throw InputError("enumerate_benchmarks: K must be >= 1");

  Refinement refinement = refine(dataset, iterations);
  std::vector<WlHistogram> histograms;
  histograms.reserve(dataset.size());
  for (const auto& c : refinement.colorings) histograms.push_back(histogram(c));
  FreqTable freq = class_frequencies(dataset, histograms);

  EnumerationReport report;
  report.candidates = top_k_candidates(freq, k, refinement.table);
  const auto& c0 = report.candidates.class0;
  const auto& c1 = report.candidates.class1;

  // Slots: class-0 candidates first, then class-1 candidates.
  MaskCache cache(dataset, refinement.colorings);
  auto emit = [&](GenerationOutcome&& outcome, BenchmarkMode mode,
                  std::vector<std::string> keys) {
    ++report.attempted;
    if (outcome.benchmark) {
      ++report.yielded;
      sink(std::move(*outcome.benchmark));
    } else {
      report.rejected.push_back(
          {mode, std::move(keys), std::move(outcome.diagnostic)});
    }
  };

  for (std::size_t i = 0; i < c0.size(); ++i) {
    for (std::size_t j = 0; j < c1.size(); ++j) {
      if (*c0[i].color == *c1[j].color) {
        // Same color in both lists (K exceeds the skewed colors); no task.
        ++report.attempted;
        report.rejected.push_back(
            {BenchmarkMode::kTwoMotif,
             {c0[i].canonical_key, c1[j].canonical_key},
             "both classes received the same motif"});
        continue;
      }
      emit(two_motif_impl(dataset, histograms, c0[i], i, c1[j],
                          c0.size() + j, cache),
           BenchmarkMode::kTwoMotif,
           {c0[i].canonical_key, c1[j].canonical_key});
    }
  }
  for (std::size_t i = 0; i < c0.size(); ++i) {
    emit(single_motif_impl(dataset, histograms, c0[i], i, 0, cache),
         BenchmarkMode::kSingleMotifClass0, {c0[i].canonical_key});
  }
  for (std::size_t j = 0; j < c1.size(); ++j) {
    emit(single_motif_impl(dataset, histograms, c1[j], c0.size() + j, 1,
                           cache),
         BenchmarkMode::kSingleMotifClass1, {c1[j].canonical_key});
  }
  return report;
}

std::vector<XaiBenchmark> enumerate_benchmarks(const Dataset& dataset,
                                               std::size_t iterations,
                                               std::size_t k,
                                               EnumerationReport* report) {
  std::vector<XaiBenchmark> out;
  auto r = enumerate_benchmarks(dataset, iterations, k,
                                [&](XaiBenchmark&& b) {
                                  out.push_back(std::move(b));
                                });
  if (report) *report = std::move(r);
  return out;
}

std::vector<XaiBenchmark> rank_candidates(std::vector<XaiBenchmark> benchmarks,
                                          std::size_t min_size,
                                          double min_balance) {
  struct Entry {
    double balance;
    std::size_t size;
    std::string name;
    std::size_t index;
  };
  std::vector<Entry> kept;
  for (std::size_t i = 0; i < benchmarks.size(); ++i) {
    const auto& b = benchmarks[i];
    double bal = b.balance();
    if (b.samples.size() < min_size || bal < min_balance) continue;
    kept.push_back({bal, b.samples.size(), b.canonical_name(), i});
  }
  std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
    if (a.balance != b.balance) return a.balance > b.balance;
    if (a.size != b.size) return a.size > b.size;
    return a.name < b.name;
  });

  using Signature =
      std::vector<std::tuple<std::size_t, ClassId, std::vector<NodeIndex>>>;
  std::set<Signature> seen;
  std::vector<XaiBenchmark> out;
  for (const auto& e : kept) {
    auto& b = benchmarks[e.index];
    Signature sig;
    sig.reserve(b.samples.size());
    for (const auto& s : b.samples) {
      sig.emplace_back(s.source_index, s.y,
                       std::vector<NodeIndex>(s.mask.begin(), s.mask.end()));
    }
    if (!seen.insert(std::move(sig)).second) continue;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace wlbench
