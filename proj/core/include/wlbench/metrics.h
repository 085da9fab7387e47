//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_METRICS_H_
#define WLBENCH_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wlbench/generator.h"
#include "wlbench/splitter.h"

namespace wlbench {

using ImportanceMask = std::vector<double>;

// Probability that a random GT node outscores a random non-GT node, ties
// counted 1/2 (exact Mann-Whitney pair count). Throws InputError when gt is
// empty or covers every node, or when scores are not finite.
double roc_auc(std::span<const double> scores, const NodeSet& gt);

struct ClassPlausibility {
  ClassId y = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::size_t n_evaluated = 0;
  std::size_t n_skipped = 0;
};

struct PlausibilityReport {
  // One row per class that owns a motif, ascending class.
  std::vector<ClassPlausibility> rows;
};

// Masks are keyed by XaiSample::graph->id(). Every test sample must have
// one; samples whose GT is empty or covers the whole graph are skipped.
PlausibilityReport plausibility(
    const XaiBenchmark& bench, const SplitAssignment& split,
    const std::map<std::string, ImportanceMask>& masks);

// Rows x methods. Scores are "higher is better" unless stated otherwise.
struct ScoreMatrix {
  std::vector<std::string> row_names;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> rows;

  std::size_t row_count() const { return rows.size(); }
  std::size_t method_count() const { return methods.size(); }
  void validate() const;
  ScoreMatrix head(std::size_t n) const;
  ScoreMatrix subset(std::span<const std::size_t> row_indices) const;
};

// Ranks within one row, 1 = best, ties get the average rank.
std::vector<double> rank_row(std::span<const double> row,
                             bool higher_is_better = true);
std::vector<double> average_ranks(const ScoreMatrix& m,
                                  bool higher_is_better = true);

struct FriedmanResult {
  double chi2 = 0.0;
  double p_value = 1.0;  // chi-square tail, k-1 degrees of freedom
  // Iman-Davenport correction; absent when chi2 saturates (F undefined).
  std::optional<double> iman_davenport_f;
  std::optional<double> iman_davenport_p;
  std::vector<double> average_ranks;
};

// Throws InputError for fewer than 2 rows or 2 methods.
FriedmanResult friedman_test(const ScoreMatrix& m,
                             bool higher_is_better = true);

struct CurvePoint {
  std::size_t n = 0;
  double prefix_p = 1.0;
  // Envelope over random n-row subsets; equal to prefix_p when no sampling.
  double min_p = 1.0;
  double median_p = 1.0;
  double max_p = 1.0;
};

// Friedman p-value as a function of the number of rows: the first n rows
// for n = 2..N, plus min/median/max over `orderings` seeded random subsets
// of size n (no envelope when orderings == 0).
std::vector<CurvePoint> friedman_curve(const ScoreMatrix& m,
                                       std::size_t orderings,
                                       std::uint64_t seed);

// Smallest n whose median p falls below `threshold`, if any.
std::optional<std::size_t> first_significant_n(
    std::span<const CurvePoint> curve, double threshold);

// Two-tailed Nemenyi q_alpha for k methods (k = 2..10, alpha 0.05 or 0.10).
double nemenyi_q(std::size_t k, double alpha);
// q_alpha * sqrt(k (k + 1) / (6 N)).
double nemenyi_cd(std::size_t k, std::size_t n, double alpha);

struct Clique {
  std::vector<std::size_t> methods;  // indices, ascending by rank
  double min_rank = 0.0;
  double max_rank = 0.0;
};

// Maximal runs of methods, in average-rank order, whose extreme ranks differ
// by less than cd. Methods not joined to any other appear as singletons.
std::vector<Clique> cd_cliques(std::span<const double> avg_ranks, double cd);

struct RankReport {
  ScoreMatrix matrix;
  double alpha = 0.05;
  FriedmanResult friedman;
  double critical_difference = 0.0;
  std::vector<Clique> cliques;
  // Method order by average rank, best first.
  std::vector<std::size_t> order;
  bool best_isolated = false;
};

RankReport rank_report(const ScoreMatrix& m, double alpha,
                       bool higher_is_better = true);

}  // namespace wlbench

#endif  // WLBENCH_METRICS_H_
