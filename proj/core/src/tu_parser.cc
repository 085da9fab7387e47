//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <unordered_map>

#include "wlbench/dataset.h"
#include "wlbench/error.h"

namespace wlbench {

void Dataset::validate() const {
  if (graphs.size() != labels.size()) {
    throw InputError("dataset '" + name + "': " +
                     std::to_string(graphs.size()) + " graphs but " +
                     std::to_string(labels.size()) + " labels");
  }
  if (graphs.size() < 2) {
    throw InputError("dataset '" + name + "' needs at least two graphs");
  }
  bool seen[2] = {false, false};
  for (ClassId y : labels) {
    if (y != 0 && y != 1) {
      throw InputError("dataset '" + name + "': class id " +
                       std::to_string(y) + " is not binary");
    }
    seen[y] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw InputError("dataset '" + name + "' contains a single class");
  }
  for (const auto& g : graphs) {
    for (LabelId l : g->labels()) {
      if (l >= label_alphabet.size()) {
        throw InputError("dataset '" + name + "': node label id " +
                         std::to_string(l) + " outside alphabet of size " +
                         std::to_string(label_alphabet.size()));
      }
    }
  }
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& prefix,
                                  const char* suffix) {
  return prefix.string() + suffix;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// One non-blank line of a TU file, split on commas.
struct Row {
  std::size_t line_no;
  std::vector<std::int64_t> values;
};

std::int64_t parse_int(std::string_view field, const std::filesystem::path& f,
                       std::size_t line_no) {
  field = trim(field);
  std::int64_t value = 0;
  // Some TU exports write integers as floats ("1.0").
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec == std::errc() && ptr != field.data() + field.size() && *ptr == '.') {
    std::string_view frac(ptr + 1, field.data() + field.size() - ptr - 1);
    if (frac.find_first_not_of('0') == std::string_view::npos) {
      ptr = field.data() + field.size();
    }
  }
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      field.empty()) {
    throw FormatError(f.string() + ":" + std::to_string(line_no) +
                      ": expected an integer, got '" + std::string(field) +
                      "'");
  }
  return value;
}

// Reads a comma-separated integer file. Trailing blank lines are dropped;
// a blank line followed by more data is a format error.
std::vector<Row> read_rows(const std::filesystem::path& f,
                           std::size_t expected_fields) {
  std::ifstream in(f);
  if (!in) throw IoError("cannot open " + f.string());
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t blank_at = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) {
      if (blank_at == 0) blank_at = line_no;
      continue;
    }
    if (blank_at != 0) {
      throw FormatError(f.string() + ":" + std::to_string(blank_at) +
                        ": blank line inside data");
    }
    Row row{line_no, {}};
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      row.values.push_back(parse_int(body.substr(start, comma - start), f,
                                     line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (row.values.size() != expected_fields) {
      throw FormatError(f.string() + ":" + std::to_string(line_no) +
                        ": expected " + std::to_string(expected_fields) +
                        " field(s), got " + std::to_string(row.values.size()));
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("read error on " + f.string());
  return rows;
}

void require_file(const std::filesystem::path& f) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(f, ec)) {
    throw IoError("missing dataset file " + f.string());
  }
}

}  // namespace

Dataset parse_tudataset(const std::filesystem::path& prefix,
                        const TuParseOptions& options) {
  const auto edge_file = with_suffix(prefix, "_A.txt");
  const auto indicator_file = with_suffix(prefix, "_graph_indicator.txt");
  const auto graph_label_file = with_suffix(prefix, "_graph_labels.txt");
  const auto node_label_file = with_suffix(prefix, "_node_labels.txt");
  for (const auto& f :
       {edge_file, indicator_file, graph_label_file, node_label_file}) {
    require_file(f);
  }

  auto warn = options.warn ? options.warn : [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  for (const char* optional :
       {"_node_attributes.txt", "_edge_labels.txt", "_edge_attributes.txt",
        "_graph_attributes.txt"}) {
    auto f = with_suffix(prefix, optional);
    std::error_code ec;
    if (std::filesystem::exists(f, ec)) {
      warn("ignoring " + f.string());
    }
  }

  const auto indicator = read_rows(indicator_file, 1);
  const auto node_labels = read_rows(node_label_file, 1);
  const auto graph_labels = read_rows(graph_label_file, 1);
  const auto edge_rows = read_rows(edge_file, 2);

  if (indicator.empty()) {
    throw FormatError(indicator_file.string() + ": no nodes");
  }
  if (node_labels.size() != indicator.size()) {
    throw FormatError(node_label_file.string() + ": " +
                      std::to_string(node_labels.size()) +
                      " node labels for " + std::to_string(indicator.size()) +
                      " nodes");
  }

  // Graph ids must form contiguous ascending blocks 1, 2, ..., G.
  const std::size_t node_total = indicator.size();
  std::vector<std::size_t> graph_of(node_total);
  std::vector<std::size_t> first_node;
  std::int64_t current = 0;
  for (std::size_t i = 0; i < node_total; ++i) {
    std::int64_t gid = indicator[i].values[0];
    if (gid != current) {
      if (gid != current + 1) {
        throw FormatError(indicator_file.string() + ":" +
                          std::to_string(indicator[i].line_no) +
                          ": graph id " + std::to_string(gid) +
                          " breaks the contiguous ascending order (previous " +
                          std::to_string(current) + ")");
      }
      current = gid;
      first_node.push_back(i);
    }
    graph_of[i] = static_cast<std::size_t>(gid - 1);
  }
  const std::size_t graph_count = first_node.size();
  first_node.push_back(node_total);
  if (graph_labels.size() != graph_count) {
    throw FormatError(graph_label_file.string() + ": " +
                      std::to_string(graph_labels.size()) + " labels for " +
                      std::to_string(graph_count) + " graphs");
  }

  // Dense renumbering of raw node labels, order preserving.
  std::vector<RawLabel> alphabet;
  for (const auto& r : node_labels) alphabet.push_back(r.values[0]);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()),
                 alphabet.end());
  auto dense_label = [&](RawLabel raw) {
    return static_cast<LabelId>(
        std::lower_bound(alphabet.begin(), alphabet.end(), raw) -
        alphabet.begin());
  };

  // Class mapping.
  std::map<RawLabel, ClassId> class_map = options.class_map;
  if (class_map.empty()) {
    std::set<RawLabel> distinct;
    for (const auto& r : graph_labels) distinct.insert(r.values[0]);
    if (distinct.size() > 2) {
      throw FormatError(graph_label_file.string() + ": " +
                        std::to_string(distinct.size()) +
                        " distinct graph labels; supply a class map");
    }
    ClassId next = 0;
    for (RawLabel raw : distinct) class_map[raw] = next++;
  }
  for (const auto& [raw, y] : class_map) {
    if (y != 0 && y != 1) {
      throw InputError("class map sends " + std::to_string(raw) + " to " +
                       std::to_string(y) + "; classes must be 0 or 1");
    }
  }

  std::vector<std::vector<Edge>> edges(graph_count);
  for (const auto& r : edge_rows) {
    std::int64_t a = r.values[0];
    std::int64_t b = r.values[1];
    auto where = [&] {
      return edge_file.string() + ":" + std::to_string(r.line_no) + ": ";
    };
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > node_total ||
        static_cast<std::size_t>(b) > node_total) {
      throw FormatError(where() + "node id out of range 1.." +
                        std::to_string(node_total));
    }
    if (a == b) {
      throw FormatError(where() + "self-loop on node " + std::to_string(a));
    }
    std::size_t u = static_cast<std::size_t>(a - 1);
    std::size_t v = static_cast<std::size_t>(b - 1);
    std::size_t gu = graph_of[u];
    if (graph_of[v] != gu) {
      throw FormatError(where() + "edge joins graphs " +
                        std::to_string(gu + 1) + " and " +
                        std::to_string(graph_of[v] + 1));
    }
    auto lu = static_cast<NodeIndex>(u - first_node[gu]);
    auto lv = static_cast<NodeIndex>(v - first_node[gu]);
    edges[gu].emplace_back(std::min(lu, lv), std::max(lu, lv));
  }

  Dataset dataset;
  dataset.name = prefix.filename().string();
  dataset.label_alphabet = alphabet;
  dataset.graphs.reserve(graph_count);
  dataset.labels.reserve(graph_count);
  for (std::size_t g = 0; g < graph_count; ++g) {
    auto& e = edges[g];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    std::vector<LabelId> labels;
    labels.reserve(first_node[g + 1] - first_node[g]);
    for (std::size_t i = first_node[g]; i < first_node[g + 1]; ++i) {
      labels.push_back(dense_label(node_labels[i].values[0]));
    }
    dataset.graphs.push_back(std::make_shared<const Graph>(
        std::move(labels), std::move(e), std::to_string(g + 1)));

    RawLabel raw = graph_labels[g].values[0];
    auto it = class_map.find(raw);
    if (it == class_map.end()) {
      throw FormatError(graph_label_file.string() + ":" +
                        std::to_string(graph_labels[g].line_no) +
                        ": raw label " + std::to_string(raw) +
                        " not covered by the class map");
    }
    dataset.labels.push_back(it->second);
  }
  dataset.validate();
  return dataset;
}

void write_tudataset(const Dataset& dataset,
                     const std::filesystem::path& prefix) {
  auto open = [&](const char* suffix) {
    auto f = with_suffix(prefix, suffix);
    std::ofstream out(f);
    if (!out) throw IoError("cannot write " + f.string());
    return out;
  };
  auto edges = open("_A.txt");
  auto indicator = open("_graph_indicator.txt");
  auto graph_labels = open("_graph_labels.txt");
  auto node_labels = open("_node_labels.txt");

  std::size_t offset = 1;
  for (std::size_t g = 0; g < dataset.size(); ++g) {
    const Graph& graph = dataset.graph(g);
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
      indicator << g + 1 << '\n';
      node_labels << dataset.label_alphabet.at(graph.label(v)) << '\n';
    }
    // Both directions, as the published files do.
    for (const auto& [u, v] : graph.edges()) {
      edges << offset + u << ", " << offset + v << '\n';
      edges << offset + v << ", " << offset + u << '\n';
    }
    graph_labels << dataset.labels[g] << '\n';
    offset += graph.node_count();
  }
  for (auto* s : {&edges, &indicator, &graph_labels, &node_labels}) {
    s->flush();
    if (!*s) throw IoError("write failed under " + prefix.string());
  }
}

}  // namespace wlbench
