//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_GENERATOR_H_
#define WLBENCH_GENERATOR_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wlbench/dataset.h"
#include "wlbench/graph.h"
#include "wlbench/wl.h"

namespace wlbench {

// Number of graphs of each class whose histogram contains a color.
struct ClassFrequency {
  std::size_t freq0 = 0;
  std::size_t freq1 = 0;

  std::size_t of(ClassId y) const { return y == 0 ? freq0 : freq1; }
  std::int64_t dfreq() const {
    return static_cast<std::int64_t>(freq1) - static_cast<std::int64_t>(freq0);
  }
  friend bool operator==(const ClassFrequency&,
                         const ClassFrequency&) = default;
};

struct FreqTable {
  std::array<std::size_t, 2> class_sizes{0, 0};
  // Only colors present in at least one histogram appear.
  std::map<WlColor, ClassFrequency> entries;

  ClassFrequency at(const WlColor& c) const;
};

FreqTable class_frequencies(const Dataset& dataset,
                            const std::vector<WlHistogram>& histograms);

// A discriminating WL label chosen as the explanation motif of one class.
struct MotifSpec {
  std::uint32_t iteration = 0;  // also the ego radius of its masks
  std::string canonical_key;
  ClassId class_role = 0;
  // Bound while the producing ColorTable is alive; absent after reading a
  // benchmark file.
  std::optional<WlColor> color;
  ClassFrequency frequency;
  // Not skewed toward class_role (dfreq of the wrong sign or zero).
  bool weak = false;

  // Identity is (iteration, canonical_key, class_role). Table-local ids and
  // statistics are not part of it.
  friend bool operator==(const MotifSpec& a, const MotifSpec& b) {
    return a.iteration == b.iteration && a.canonical_key == b.canonical_key &&
           a.class_role == b.class_role;
  }
};

struct CandidateLists {
  std::vector<MotifSpec> class0;  // most negative dfreq first
  std::vector<MotifSpec> class1;  // largest dfreq first
  bool truncated = false;         // fewer than K colors were available
};

// Top-K colors by dfreq for each class. Ties are broken by |dfreq| desc,
// then the favored class's frequency desc, then canonical key asc.
CandidateLists top_k_candidates(const FreqTable& table, std::size_t k,
                                const ColorTable& colors);

// Union of the radius-`iteration` ego graphs of every node carrying the
// motif's color. Throws PreconditionError if the color does not occur.
NodeSet build_mask(const Graph& g, const WlColoring& coloring,
                   const MotifSpec& motif);

enum class BenchmarkMode { kTwoMotif, kSingleMotifClass0, kSingleMotifClass1 };

std::string to_string(BenchmarkMode mode);
BenchmarkMode parse_benchmark_mode(const std::string& s);

struct XaiSample {
  std::shared_ptr<const Graph> graph;
  std::size_t source_index = 0;  // position in the source dataset
  ClassId y = 0;
  NodeSet mask;

  friend bool operator==(const XaiSample& a, const XaiSample& b) {
    return a.source_index == b.source_index && a.y == b.y &&
           a.mask == b.mask && *a.graph == *b.graph;
  }
};

struct XaiBenchmark {
  std::string source_name;
  BenchmarkMode mode = BenchmarkMode::kTwoMotif;
  // Two-motif: {m0, m1}. Single-motif: one motif whose class_role owns the
  // masks.
  std::vector<MotifSpec> motifs;
  std::vector<XaiSample> samples;
  std::vector<RawLabel> label_alphabet;

  std::array<std::size_t, 2> class_counts() const;
  // min(|D0|, |D1|) / max(|D0|, |D1|); 0 when a class is empty.
  double balance() const;
  const MotifSpec* motif_for(ClassId y) const;
  // Deterministic identifier built from the mode and motif keys.
  std::string canonical_name() const;

  friend bool operator==(const XaiBenchmark&, const XaiBenchmark&) = default;
};

// Either a benchmark or the reason it was rejected.
struct GenerationOutcome {
  std::optional<XaiBenchmark> benchmark;
  std::string diagnostic;
};

GenerationOutcome generate_two_motif(const Dataset& dataset,
                                     const std::vector<WlHistogram>& histograms,
                                     const std::vector<WlColoring>& colorings,
                                     const MotifSpec& m0, const MotifSpec& m1);

GenerationOutcome generate_single_motif(
    const Dataset& dataset, const std::vector<WlHistogram>& histograms,
    const std::vector<WlColoring>& colorings, const MotifSpec& m, ClassId y);

struct Rejection {
  BenchmarkMode mode;
  std::vector<std::string> motif_keys;
  std::string reason;
};

struct EnumerationReport {
  std::size_t attempted = 0;
  std::size_t yielded = 0;
  CandidateLists candidates;
  std::vector<Rejection> rejected;
};

using BenchmarkSink = std::function<void(XaiBenchmark&&)>;

// Full candidate search: refine with `iterations` rounds, take the top-k
// candidates per class, then try every (m0, m1) pair followed by every
// single-motif task (class 0 candidates, then class 1). Accepted benchmarks
// go to `sink` in that order. Throws InputError on a single-class dataset.
EnumerationReport enumerate_benchmarks(const Dataset& dataset,
                                       std::size_t iterations, std::size_t k,
                                       const BenchmarkSink& sink);

std::vector<XaiBenchmark> enumerate_benchmarks(const Dataset& dataset,
                                               std::size_t iterations,
                                               std::size_t k,
                                               EnumerationReport* report =
                                                   nullptr);

// Keeps benchmarks with at least `min_size` samples and balance >=
// `min_balance`, drops later benchmarks whose samples (graphs, classes and
// masks) repeat an earlier one, and orders by balance desc, size desc,
// canonical name asc.
std::vector<XaiBenchmark> rank_candidates(std::vector<XaiBenchmark> benchmarks,
                                          std::size_t min_size,
                                          double min_balance);

}  // namespace wlbench

#endif  // WLBENCH_GENERATOR_H_
