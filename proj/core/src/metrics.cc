//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "wlbench/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include "portable_random.h"
#include "wlbench/error.h"

namespace wlbench {

double roc_auc(std::span<const double> scores, const NodeSet& gt) {
  for (double s : scores) {
    if (!std::isfinite(s)) throw InputError("roc_auc: non-finite score");
  }
  if (!gt.empty() && gt.nodes().back() >= scores.size()) {
    throw InputError("roc_auc: GT node " + std::to_string(gt.nodes().back()) +
                     " outside " + std::to_string(scores.size()) + " scores");
  }
  const std::size_t pos = gt.size();
  const std::size_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0) {
    throw InputError("roc_auc: undefined when the GT mask is empty or full");
  }
  // Mann-Whitney over tie groups in ascending score order, counted in
  // half-units so the sum is an exact integer.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::uint64_t twice_wins = 0;
  std::uint64_t neg_below = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::uint64_t pos_here = 0;
    std::uint64_t neg_here = 0;
    for (; j < order.size() && scores[order[j]] == scores[order[i]]; ++j) {
      if (gt.contains(static_cast<NodeIndex>(order[j]))) {
        ++pos_here;
      } else {
        ++neg_here;
      }
    }
    twice_wins += 2 * pos_here * neg_below + pos_here * neg_here;
    neg_below += neg_here;
    i = j;
  }
  return static_cast<double>(twice_wins) /
         (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

PlausibilityReport plausibility(
    const XaiBenchmark& bench, const SplitAssignment& split,
    const std::map<std::string, ImportanceMask>& masks) {
  if (split.parts.size() != bench.samples.size()) {
    throw InputError("split covers " + std::to_string(split.parts.size()) +
                     " samples, benchmark has " +
                     std::to_string(bench.samples.size()));
  }
  PlausibilityReport report;
  for (ClassId y : {0, 1}) {
    if (bench.motif_for(y) == nullptr) continue;
    ClassPlausibility row;
    row.y = y;
    std::vector<double> aucs;
    for (std::size_t i = 0; i < bench.samples.size(); ++i) {
      const XaiSample& s = bench.samples[i];
      if (split.parts[i] != SplitPart::kTest || s.y != y) continue;
      auto it = masks.find(s.graph->id());
      if (it == masks.end()) {
        throw InputError("no importance mask for test graph '" +
                         s.graph->id() + "'");
      }
      if (it->second.size() != s.graph->node_count()) {
        throw InputError("mask for graph '" + s.graph->id() + "' has " +
                         std::to_string(it->second.size()) + " scores for " +
                         std::to_string(s.graph->node_count()) + " nodes");
      }
      if (s.mask.empty() || s.mask.size() == s.graph->node_count()) {
        ++row.n_skipped;
        continue;
      }
      aucs.push_back(roc_auc(it->second, s.mask));
    }
    row.n_evaluated = aucs.size();
    if (!aucs.empty()) {
      double n = static_cast<double>(aucs.size());
      row.mean = std::accumulate(aucs.begin(), aucs.end(), 0.0) / n;
      double ss = 0.0;
      for (double a : aucs) ss += (a - row.mean) * (a - row.mean);
      row.stddev = std::sqrt(ss / n);
    }
    report.rows.push_back(row);
  }
  return report;
}

void ScoreMatrix::validate() const {
  if (row_names.size() != rows.size()) {
    throw InputError("score matrix: " + std::to_string(row_names.size()) +
                     " row names for " + std::to_string(rows.size()) +
                     " rows");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != methods.size()) {
      throw InputError("score matrix row '" + row_names[r] + "' has " +
                       std::to_string(rows[r].size()) + " values for " +
                       std::to_string(methods.size()) + " methods");
    }
    for (double v : rows[r]) {
      if (!std::isfinite(v)) {
        throw InputError("score matrix row '" + row_names[r] +
                         "' has a non-finite value");
      }
    }
  }
}

ScoreMatrix ScoreMatrix::head(std::size_t n) const {
  n = std::min(n, rows.size());
  ScoreMatrix out{{row_names.begin(), row_names.begin() + n},
                  methods,
                  {rows.begin(), rows.begin() + n}};
  return out;
}

ScoreMatrix ScoreMatrix::subset(std::span<const std::size_t> idx) const {
  ScoreMatrix out;
  out.methods = methods;
  for (std::size_t i : idx) {
    out.row_names.push_back(row_names.at(i));
    out.rows.push_back(rows.at(i));
  }
  return out;
}

std::vector<double> rank_row(std::span<const double> row,
                             bool higher_is_better) {
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return higher_is_better ? row[a] > row[b] : row[a] < row[b];
  });
  std::vector<double> ranks(row.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && row[order[j + 1]] == row[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> average_ranks(const ScoreMatrix& m,
                                  bool higher_is_better) {
  std::vector<double> sum(m.method_count(), 0.0);
  for (const auto& row : m.rows) {
    auto r = rank_row(row, higher_is_better);
    for (std::size_t j = 0; j < r.size(); ++j) sum[j] += r[j];
  }
  for (double& s : sum) s /= static_cast<double>(m.row_count());
  return sum;
}

FriedmanResult friedman_test(const ScoreMatrix& m, bool higher_is_better) {
  m.validate();
  const std::size_t n = m.row_count();
  const std::size_t k = m.method_count();
  if (n < 2 || k < 2) {
    throw InputError("friedman_test needs >= 2 rows and >= 2 methods (got " +
                     std::to_string(n) + "x" + std::to_string(k) + ")");
  }
  FriedmanResult out;
  out.average_ranks = average_ranks(m, higher_is_better);
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  double ss = 0.0;
  for (double r : out.average_ranks) {
    ss += (r - (kd + 1) / 2) * (r - (kd + 1) / 2);
  }
  out.chi2 = 12.0 * nd / (kd * (kd + 1)) * ss;
  boost::math::chi_squared dist(kd - 1);
  out.p_value = out.chi2 <= 0.0
                    ? 1.0
                    : boost::math::cdf(boost::math::complement(dist, out.chi2));
  const double denom = nd * (kd - 1) - out.chi2;
  if (denom > 0) {
    double f = (nd - 1) * out.chi2 / denom;
    out.iman_davenport_f = f;
    boost::math::fisher_f fdist(kd - 1, (kd - 1) * (nd - 1));
    out.iman_davenport_p =
        f <= 0 ? 1.0 : boost::math::cdf(boost::math::complement(fdist, f));
  }
  return out;
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

std::vector<CurvePoint> friedman_curve(const ScoreMatrix& m,
                                       std::size_t orderings,
                                       std::uint64_t seed) {
  m.validate();
  std::vector<CurvePoint> curve;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> all(m.row_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t n = 2; n <= m.row_count(); ++n) {
    CurvePoint pt;
    pt.n = n;
    pt.prefix_p = friedman_test(m.head(n)).p_value;
    if (orderings == 0) {
      pt.min_p = pt.median_p = pt.max_p = pt.prefix_p;
    } else {
      std::vector<double> ps;
      ps.reserve(orderings);
      for (std::size_t t = 0; t < orderings; ++t) {
        // Partial Fisher-Yates: the first n slots are a uniform n-subset.
        std::vector<std::size_t> idx = all;
        for (std::size_t i = 0; i < n; ++i) {
          std::swap(idx[i], idx[i + internal::draw_below(rng, idx.size() - i)]);
        }
        std::vector<std::size_t> chosen(idx.begin(), idx.begin() + n);
        std::sort(chosen.begin(), chosen.end());
        ps.push_back(friedman_test(m.subset(chosen)).p_value);
      }
      pt.min_p = *std::min_element(ps.begin(), ps.end());
      pt.max_p = *std::max_element(ps.begin(), ps.end());
      pt.median_p = median_of(std::move(ps));
    }
    curve.push_back(pt);
  }
  return curve;
}

std::optional<std::size_t> first_significant_n(
    std::span<const CurvePoint> curve, double threshold) {
  for (const auto& pt : curve) {
    if (pt.median_p < threshold) return pt.n;
  }
  return std::nullopt;
}

double nemenyi_q(std::size_t k, double alpha) {
  // Two-tailed Nemenyi critical values (studentized range / sqrt 2, infinite
  // degrees of freedom), k = 2..10.
  static constexpr double kQ05[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                                    2.949, 3.031, 3.102, 3.164};
  static constexpr double kQ10[] = {1.645, 2.052, 2.291, 2.459, 2.589,
                                    2.693, 2.780, 2.855, 2.920};
  if (k < 2 || k > 10) {
    throw InputError("Nemenyi q is tabulated for 2..10 methods, got " +
                     std::to_string(k));
  }
  if (std::abs(alpha - 0.05) < 1e-12) return kQ05[k - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return kQ10[k - 2];
  throw InputError("Nemenyi q is tabulated for alpha 0.05 and 0.10 only");
}

double nemenyi_cd(std::size_t k, std::size_t n, double alpha) {
  if (n == 0) throw InputError("nemenyi_cd: N must be >= 1");
  const double kd = static_cast<double>(k);
  return nemenyi_q(k, alpha) *
         std::sqrt(kd * (kd + 1) / (6.0 * static_cast<double>(n)));
}

std::vector<Clique> cd_cliques(std::span<const double> avg_ranks, double cd) {
  std::vector<std::size_t> order(avg_ranks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return avg_ranks[a] < avg_ranks[b];
  });
  std::vector<Clique> out;
  std::size_t last_end = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           avg_ranks[order[j + 1]] - avg_ranks[order[i]] < cd) {
      ++j;
    }
    // [i, j] is maximal unless the previous run already reached j.
    if (i == 0 || j + 1 > last_end) {
      Clique c;
      c.methods.assign(order.begin() + i, order.begin() + j + 1);
      c.min_rank = avg_ranks[order[i]];
      c.max_rank = avg_ranks[order[j]];
      out.push_back(std::move(c));
      last_end = j + 1;
    }
  }
  return out;
}

RankReport rank_report(const ScoreMatrix& m, double alpha,
                       bool higher_is_better) {
  RankReport r;
  r.matrix = m;
  r.alpha = alpha;
  r.friedman = friedman_test(m, higher_is_better);
  r.critical_difference = nemenyi_cd(m.method_count(), m.row_count(), alpha);
  r.cliques = cd_cliques(r.friedman.average_ranks, r.critical_difference);
  r.order.resize(m.method_count());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](auto a, auto b) {
    return r.friedman.average_ranks[a] < r.friedman.average_ranks[b];
  });
  for (const auto& c : r.cliques) {
    if (std::find(c.methods.begin(), c.methods.end(), r.order[0]) !=
        c.methods.end()) {
      r.best_isolated = c.methods.size() == 1;
      if (!r.best_isolated) break;
    }
  }
  return r;
}

}  // namespace wlbench
