//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "wlbench/export.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "wlbench/error.h"

namespace wlbench {

using nlohmann::json;

namespace {

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t limit = std::min<std::size_t>(e.byte, text.size() + 1);
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FormatError(std::string(source) + ":" + std::to_string(line) + ":" +
                      std::to_string(col) + ": malformed JSON: " + e.what());
  }
}

json parse_object_text(std::string_view text, const char* what) {
  if (text.empty()) return json::object();
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw InputError(std::string(what) + " must be an object");
  return j;
}

// Field access with format errors naming the JSON path.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw FormatError(source_ + ": " + path + ": " + msg);
  }

  const json& field(const json& obj, const std::string& path,
                    const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
  }

  std::string string(const json& obj, const std::string& path,
                     const char* key) const {
    const json& v = field(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
  }

  std::uint64_t uint(const json& v, const std::string& path) const {
    // The parser stores every non-negative integer literal as unsigned.
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::uint64_t uint(const json& obj, const std::string& path,
                     const char* key) const {
    return uint(field(obj, path, key), path + "." + key);
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "non-finite number");
    return d;
  }

  const json& array(const json& obj, const std::string& path,
                    const char* key) const {
    const json& v = field(obj, path, key);
    if (!v.is_array()) fail(path + "." + key, "expected an array");
    return v;
  }

  void check_version(const json& root) const {
    std::string v = string(root, "$", "schema_version");
    auto dot = v.find('.');
    std::string major = v.substr(0, dot);
    std::string ours(kSchemaVersion.substr(0, kSchemaVersion.find('.')));
    if (major != ours) {
      throw VersionError(source_ + ": schema_version " + v +
                         " is not supported (expected " + ours + ".x)");
    }
  }

 private:
  std::string source_;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InputError(std::string("cannot serialize non-finite ") + what);
  }
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string serialize_benchmark(const XaiBenchmark& bench,
                                const SplitAssignment& split,
                                const BenchmarkMetadata& metadata) {
  if (split.parts.size() != bench.samples.size()) {
    throw InputError("split covers " + std::to_string(split.parts.size()) +
                     " samples, benchmark has " +
                     std::to_string(bench.samples.size()));
  }
  json motifs = json::array();
  for (const auto& m : bench.motifs) {
    motifs.push_back({{"class", m.class_role},
                      {"iteration", m.iteration},
                      {"canonical_key", m.canonical_key},
                      {"freq0", m.frequency.freq0},
                      {"freq1", m.frequency.freq1},
                      {"weak", m.weak}});
  }
  const double balance = bench.balance();
  require_finite(balance, "balance");
  json edges_meta = json::array();
  for (double e : split.size_bin_edges) {
    require_finite(e, "size bin edge");
    edges_meta.push_back(e);
  }
  auto counts = bench.class_counts();
  json meta = {
      {"source_dataset", bench.source_name},
      {"wl_iterations", metadata.wl_iterations},
      {"top_k", metadata.top_k},
      {"mode", to_string(bench.mode)},
      {"name", bench.canonical_name()},
      {"motifs", motifs},
      {"balance", balance},
      {"class_counts", {counts[0], counts[1]}},
      {"label_alphabet", bench.label_alphabet},
      {"split",
       {{"seed", split.seed},
        {"ratio_tenths",
         {split.ratio_tenths[0], split.ratio_tenths[1],
          split.ratio_tenths[2]}},
        {"strata", "class x node-count quartile"},
        {"size_bin_edges", edges_meta}}},
      {"run_config",
       parse_object_text(metadata.run_config_json, "run_config")}};

  json samples = json::array();
  for (std::size_t i = 0; i < bench.samples.size(); ++i) {
    const XaiSample& s = bench.samples[i];
    json edges = json::array();
    for (const auto& [u, v] : s.graph->edges()) edges.push_back({u, v});
    samples.push_back(
        {{"graph_id", s.graph->id()},
         {"source_index", s.source_index},
         {"num_nodes", s.graph->node_count()},
         {"node_labels",
          std::vector<LabelId>(s.graph->labels().begin(),
                               s.graph->labels().end())},
         {"edges", edges},
         {"y", s.y},
         {"gt_mask", std::vector<NodeIndex>(s.mask.begin(), s.mask.end())},
         {"split", to_string(split.parts[i])}});
  }
  json root = {{"schema_version", kSchemaVersion},
               {"metadata", meta},
               {"samples", samples}};
  return canonical(root);
}

std::string write_benchmark(const XaiBenchmark& bench,
                            const SplitAssignment& split,
                            const BenchmarkMetadata& metadata,
                            const std::filesystem::path& path) {
  std::string bytes = serialize_benchmark(bench, split, metadata);
  write_file_atomic(path, bytes);
  return sha256_hex(bytes);
}

LoadedBenchmark parse_benchmark(std::string_view text,
                                std::string_view source_name) {
  const json root = parse_json(text, source_name);
  Reader r{std::string(source_name)};
  r.check_version(root);

  LoadedBenchmark out;
  out.fingerprint = sha256_hex(canonical(root));
  const json& meta = r.field(root, "$", "metadata");
  XaiBenchmark& b = out.benchmark;
  b.source_name = r.string(meta, "metadata", "source_dataset");
  b.mode = parse_benchmark_mode(r.string(meta, "metadata", "mode"));
  out.metadata.wl_iterations = r.uint(meta, "metadata", "wl_iterations");
  out.metadata.top_k = r.uint(meta, "metadata", "top_k");
  const json& run_config = r.field(meta, "metadata", "run_config");
  if (!run_config.is_object()) r.fail("metadata.run_config", "expected an object");
  out.metadata.run_config_json = run_config.dump();

  const json& alphabet = r.array(meta, "metadata", "label_alphabet");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!alphabet[i].is_number_integer()) {
      r.fail("metadata.label_alphabet[" + std::to_string(i) + "]",
             "expected an integer");
    }
    b.label_alphabet.push_back(alphabet[i].get<RawLabel>());
  }

  const json& motifs = r.array(meta, "metadata", "motifs");
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    std::string path = "metadata.motifs[" + std::to_string(i) + "]";
    MotifSpec m;
    m.class_role = static_cast<ClassId>(r.uint(motifs[i], path, "class"));
    if (m.class_role > 1) r.fail(path + ".class", "expected 0 or 1");
    m.iteration = static_cast<std::uint32_t>(r.uint(motifs[i], path, "iteration"));
    m.canonical_key = r.string(motifs[i], path, "canonical_key");
    m.frequency.freq0 = r.uint(motifs[i], path, "freq0");
    m.frequency.freq1 = r.uint(motifs[i], path, "freq1");
    const json& weak = r.field(motifs[i], path, "weak");
    if (!weak.is_boolean()) r.fail(path + ".weak", "expected a boolean");
    m.weak = weak.get<bool>();
    b.motifs.push_back(std::move(m));
  }
  const std::size_t expected_motifs = b.mode == BenchmarkMode::kTwoMotif ? 2 : 1;
  if (b.motifs.size() != expected_motifs) {
    r.fail("metadata.motifs", "mode " + to_string(b.mode) + " needs " +
                                  std::to_string(expected_motifs) + " motif(s)");
  }
  if (b.mode == BenchmarkMode::kTwoMotif &&
      (b.motifs[0].class_role != 0 || b.motifs[1].class_role != 1)) {
    r.fail("metadata.motifs", "two-motif benchmarks list class 0 then class 1");
  }
  if (b.mode != BenchmarkMode::kTwoMotif &&
      b.motifs[0].class_role !=
          (b.mode == BenchmarkMode::kSingleMotifClass0 ? 0 : 1)) {
    r.fail("metadata.motifs", "motif class does not match mode");
  }

  const json& split_meta = r.field(meta, "metadata", "split");
  out.split.seed = r.uint(split_meta, "metadata.split", "seed");
  const json& tenths = r.array(split_meta, "metadata.split", "ratio_tenths");
  if (tenths.size() != 3) r.fail("metadata.split.ratio_tenths", "expected 3 values");
  unsigned tenth_sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.split.ratio_tenths[i] = static_cast<unsigned>(
        r.uint(tenths[i], "metadata.split.ratio_tenths"));
    tenth_sum += out.split.ratio_tenths[i];
  }
  if (tenth_sum != 10) r.fail("metadata.split.ratio_tenths", "must sum to 10");
  const json& bin_edges = r.array(split_meta, "metadata.split", "size_bin_edges");
  for (const auto& e : bin_edges) {
    out.split.size_bin_edges.push_back(r.number(e, "metadata.split.size_bin_edges"));
  }

  const json& samples = r.array(root, "$", "samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const json& s = samples[i];
    std::string path = "samples[" + std::to_string(i) + "]";
    std::string graph_id = r.string(s, path, "graph_id");
    std::size_t n = r.uint(s, path, "num_nodes");
    const json& labels_json = r.array(s, path, "node_labels");
    if (labels_json.size() != n) {
      r.fail(path + ".node_labels", std::to_string(labels_json.size()) +
                                        " labels for " + std::to_string(n) +
                                        " nodes");
    }
    std::vector<LabelId> labels;
    for (const auto& l : labels_json) {
      auto id = r.uint(l, path + ".node_labels");
      if (id >= b.label_alphabet.size()) {
        r.fail(path + ".node_labels", "label id " + std::to_string(id) +
                                          " outside the label alphabet");
      }
      labels.push_back(static_cast<LabelId>(id));
    }
    std::vector<Edge> edges;
    for (const auto& e : r.array(s, path, "edges")) {
      if (!e.is_array() || e.size() != 2) {
        r.fail(path + ".edges", "each edge is a [u, v] pair");
      }
      auto u = r.uint(e[0], path + ".edges");
      auto v = r.uint(e[1], path + ".edges");
      if (u == v) {
        r.fail(path + ".edges", "self-loop [" + std::to_string(u) + ", " +
                                    std::to_string(v) + "]");
      }
      if (u > v) r.fail(path + ".edges", "edges must be stored with u < v");
      if (v >= n) r.fail(path + ".edges", "edge endpoint out of range");
      edges.emplace_back(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
    }
    std::shared_ptr<const Graph> graph;
    try {
      graph = std::make_shared<const Graph>(std::move(labels), std::move(edges),
                                            graph_id);
    } catch (const InputError& e) {
      r.fail(path, e.what());
    }
    XaiSample sample;
    sample.graph = std::move(graph);
    sample.source_index = r.uint(s, path, "source_index");
    sample.y = static_cast<ClassId>(r.uint(s, path, "y"));
    if (sample.y > 1) r.fail(path + ".y", "expected 0 or 1");
    std::vector<NodeIndex> mask;
    for (const auto& v : r.array(s, path, "gt_mask")) {
      auto node = r.uint(v, path + ".gt_mask");
      if (node >= n) r.fail(path + ".gt_mask", "node out of range");
      if (!mask.empty() && node <= mask.back()) {
        r.fail(path + ".gt_mask", "must be strictly increasing");
      }
      mask.push_back(static_cast<NodeIndex>(node));
    }
    sample.mask = NodeSet(std::move(mask));
    if (b.motif_for(sample.y) != nullptr && sample.mask.empty()) {
      r.fail(path + ".gt_mask", "empty mask for a class that owns a motif");
    }
    if (b.motif_for(sample.y) == nullptr && !sample.mask.empty()) {
      r.fail(path + ".gt_mask", "mask given for a class without a motif");
    }
    try {
      out.split.parts.push_back(parse_split_part(r.string(s, path, "split")));
    } catch (const FormatError& e) {
      r.fail(path + ".split", e.what());
    }
    b.samples.push_back(std::move(sample));
  }

  // Cross-checks against the recorded summary numbers.
  auto counts = b.class_counts();
  const json& recorded = r.array(meta, "metadata", "class_counts");
  if (recorded.size() != 2 || r.uint(recorded[0], "metadata.class_counts") != counts[0] ||
      r.uint(recorded[1], "metadata.class_counts") != counts[1]) {
    r.fail("metadata.class_counts", "does not match the samples");
  }
  double balance = r.number(r.field(meta, "metadata", "balance"), "metadata.balance");
  if (balance != b.balance()) {
    r.fail("metadata.balance", "does not match the samples");
  }
  return out;
}

LoadedBenchmark read_benchmark(const std::filesystem::path& path) {
  return parse_benchmark(read_file(path), path.string());
}

std::string serialize_masks(const MaskFile& masks) {
  json entries = json::array();
  for (const auto& [graph_id, scores] : masks.masks) {
    for (double s : scores) require_finite(s, "importance score");
    entries.push_back({{"graph_id", graph_id}, {"scores", scores}});
  }
  json root = {{"schema_version", kSchemaVersion},
               {"benchmark_fingerprint", masks.benchmark_fingerprint},
               {"method", masks.method},
               {"metadata", parse_object_text(masks.metadata_json, "mask metadata")},
               {"masks", entries}};
  return canonical(root);
}

void write_masks(const MaskFile& masks, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_masks(masks));
}

MaskFile parse_masks(std::string_view text, std::string_view source_name) {
  const json root = parse_json(text, source_name);
  Reader r{std::string(source_name)};
  r.check_version(root);
  MaskFile out;
  out.benchmark_fingerprint = r.string(root, "$", "benchmark_fingerprint");
  out.method = r.string(root, "$", "method");
  if (root.contains("metadata")) {
    if (!root["metadata"].is_object()) r.fail("metadata", "expected an object");
    out.metadata_json = root["metadata"].dump();
  }
  const json& entries = r.array(root, "$", "masks");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string path = "masks[" + std::to_string(i) + "]";
    std::string id = r.string(entries[i], path, "graph_id");
    ImportanceMask scores;
    for (const auto& v : r.array(entries[i], path, "scores")) {
      scores.push_back(r.number(v, path + ".scores"));
    }
    if (!out.masks.emplace(id, std::move(scores)).second) {
      r.fail(path, "duplicate graph_id '" + id + "'");
    }
  }
  return out;
}

MaskFile read_masks(const std::filesystem::path& path) {
  return parse_masks(read_file(path), path.string());
}

void check_masks(const MaskFile& masks, const LoadedBenchmark& bench) {
  if (masks.benchmark_fingerprint != bench.fingerprint) {
    throw IntegrityError("mask file for method '" + masks.method +
                         "' was produced for benchmark " +
                         masks.benchmark_fingerprint + ", not " +
                         bench.fingerprint);
  }
  const auto& samples = bench.benchmark.samples;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (bench.split.parts[i] != SplitPart::kTest) continue;
    const auto& g = *samples[i].graph;
    auto it = masks.masks.find(g.id());
    if (it == masks.masks.end()) {
      throw IntegrityError("mask file for method '" + masks.method +
                           "' lacks test graph '" + g.id() + "'");
    }
    if (it->second.size() != g.node_count()) {
      throw IntegrityError("mask for graph '" + g.id() + "' has " +
                           std::to_string(it->second.size()) +
                           " scores for " + std::to_string(g.node_count()) +
                           " nodes");
    }
  }
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' ||
                             cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    out.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

ScoreMatrix parse_score_matrix_csv(std::string_view text,
                                   std::string_view source_name) {
  ScoreMatrix m;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = true;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (line.front() == '#') continue;
    auto cells = split_csv_line(line);
    auto where = [&] {
      return std::string(source_name) + ":" + std::to_string(line_no) + ": ";
    };
    if (header) {
      if (cells.size() < 3) {
        throw FormatError(where() + "header needs a row column and >= 2 methods");
      }
      m.methods.assign(cells.begin() + 1, cells.end());
      header = false;
      continue;
    }
    if (cells.size() != m.methods.size() + 1) {
      throw FormatError(where() + "expected " +
                        std::to_string(m.methods.size() + 1) + " cells, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      std::istringstream in(cells[c]);
      double v;
      if (!(in >> v) || !in.eof() || !std::isfinite(v)) {
        throw FormatError(where() + "'" + cells[c] + "' is not a finite number");
      }
      row.push_back(v);
    }
    m.row_names.push_back(cells[0]);
    m.rows.push_back(std::move(row));
  }
  if (header) throw FormatError(std::string(source_name) + ": empty score matrix");
  return m;
}

ScoreMatrix read_score_matrix_csv(const std::filesystem::path& path) {
  return parse_score_matrix_csv(read_file(path), path.string());
}

std::string format_score_matrix_csv(const ScoreMatrix& m) {
  m.validate();
  std::ostringstream out;
  out << "row";
  for (const auto& name : m.methods) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    out << m.row_names[r];
    for (double v : m.rows[r]) out << ',' << json(v).dump();
    out << '\n';
  }
  return out.str();
}

std::string plausibility_report_json(
    std::string_view benchmark_name, std::string_view fingerprint,
    const std::map<std::string, PlausibilityReport>& by_method,
    std::string_view run_config_json) {
  json methods = json::object();
  for (const auto& [method, report] : by_method) {
    json rows = json::array();
    for (const auto& row : report.rows) {
      require_finite(row.mean, "plausibility mean");
      require_finite(row.stddev, "plausibility std");
      rows.push_back({{"class", row.y},
                      {"mean", row.mean},
                      {"std", row.stddev},
                      {"n_evaluated", row.n_evaluated},
                      {"n_skipped", row.n_skipped}});
    }
    methods[method] = rows;
  }
  json root = {{"schema_version", kSchemaVersion},
               {"benchmark", std::string(benchmark_name)},
               {"benchmark_fingerprint", std::string(fingerprint)},
               {"methods", methods},
               {"run_config", parse_object_text(run_config_json, "run_config")}};
  return canonical(root);
}

std::string rank_report_json(const RankReport& report,
                             std::span<const CurvePoint> curve,
                             std::string_view run_config_json) {
  const auto& m = report.matrix;
  json rows = json::array();
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    rows.push_back({{"name", m.row_names[r]}, {"scores", m.rows[r]}});
  }
  json cliques = json::array();
  for (const auto& c : report.cliques) {
    json names = json::array();
    for (auto i : c.methods) names.push_back(m.methods[i]);
    cliques.push_back(
        {{"methods", names}, {"min_rank", c.min_rank}, {"max_rank", c.max_rank}});
  }
  json order = json::array();
  for (auto i : report.order) order.push_back(m.methods[i]);
  json avg = json::object();
  for (std::size_t j = 0; j < m.method_count(); ++j) {
    avg[m.methods[j]] = report.friedman.average_ranks[j];
  }
  json friedman = {{"chi2", report.friedman.chi2},
                   {"p_value", report.friedman.p_value},
                   {"df", m.method_count() - 1}};
  if (report.friedman.iman_davenport_f) {
    friedman["iman_davenport_f"] = *report.friedman.iman_davenport_f;
    friedman["iman_davenport_p"] = *report.friedman.iman_davenport_p;
  }
  json curve_json = json::array();
  for (const auto& pt : curve) {
    curve_json.push_back({{"n", pt.n},
                          {"prefix_p", pt.prefix_p},
                          {"min_p", pt.min_p},
                          {"median_p", pt.median_p},
                          {"max_p", pt.max_p}});
  }
  json root = {{"schema_version", kSchemaVersion},
               {"methods", m.methods},
               {"rows", rows},
               {"average_ranks", avg},
               {"order", order},
               {"friedman", friedman},
               {"alpha", report.alpha},
               {"critical_difference", report.critical_difference},
               {"cliques", cliques},
               {"best_isolated", report.best_isolated},
               {"friedman_curve", curve_json},
               {"run_config", parse_object_text(run_config_json, "run_config")}};
  return canonical(root);
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read error on " + path.string());
  return buf.str();
}

}  // namespace wlbench
