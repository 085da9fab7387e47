//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_DATASET_H_
#define WLBENCH_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wlbench/graph.h"

namespace wlbench {

using ClassId = int;
using RawLabel = std::int64_t;

// Binary graph-classification dataset.
//
// Node labels inside each Graph are dense ids into `label_alphabet`, which
// holds the raw label values from the source files in ascending order.
struct Dataset {
  std::string name;
  std::vector<std::shared_ptr<const Graph>> graphs;
  std::vector<ClassId> labels;
  std::vector<RawLabel> label_alphabet;

  std::size_t size() const { return graphs.size(); }
  std::size_t label_alphabet_size() const { return label_alphabet.size(); }
  const Graph& graph(std::size_t i) const { return *graphs[i]; }

  // Throws InputError unless graphs/labels align, there are at least two
  // graphs, both classes occur, and every node label is in the alphabet.
  void validate() const;
};

struct TuParseOptions {
  // Raw graph label -> class. When empty, the sorted distinct raw labels are
  // mapped to 0 and 1 (and more than two distinct labels is an error).
  std::map<RawLabel, ClassId> class_map;
  // Receives non-fatal notes such as ignored attribute files. Defaults to
  // writing to stderr.
  std::function<void(std::string_view)> warn;
};

// Reads <prefix>_A.txt, <prefix>_graph_indicator.txt,
// <prefix>_graph_labels.txt and <prefix>_node_labels.txt.
//
// Throws IoError when a file is missing and FormatError on inconsistent
// contents (cross-graph edges, self-loops, non-contiguous graph ids, label
// sets the class map does not cover).
Dataset parse_tudataset(const std::filesystem::path& prefix,
                        const TuParseOptions& options = {});

// Writes the dataset in the same four-file format. Graph labels are written
// as class ids and node labels as their raw alphabet values.
void write_tudataset(const Dataset& dataset,
                     const std::filesystem::path& prefix);

}  // namespace wlbench

#endif  // WLBENCH_DATASET_H_
