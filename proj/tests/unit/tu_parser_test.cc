//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.h"
#include "wlbench/dataset.h"
#include "wlbench/error.h"

namespace wlbench {
namespace {

using testing::TempDir;
using testing::write_text;

const std::filesystem::path kData = WLBENCH_TEST_DATA_DIR;

TuParseOptions quiet() {
  TuParseOptions o;
  o.warn = [](std::string_view) {};
  return o;
}

void write_tu(const std::filesystem::path& prefix, const std::string& a,
              const std::string& indicator, const std::string& graph_labels,
              const std::string& node_labels) {
  write_text(prefix.string() + "_A.txt", a);
  write_text(prefix.string() + "_graph_indicator.txt", indicator);
  write_text(prefix.string() + "_graph_labels.txt", graph_labels);
  write_text(prefix.string() + "_node_labels.txt", node_labels);
}

TEST(TuParser, TriangleAndEdgeFixture) {
  Dataset d = parse_tudataset(kData / "tiny" / "TINY", quiet());
  EXPECT_EQ(d.name, "TINY");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.labels, (std::vector<ClassId>{1, 0}));
  EXPECT_EQ(d.label_alphabet, (std::vector<RawLabel>{5, 7}));
  EXPECT_EQ(d.graph(0).node_count(), 3u);
  EXPECT_EQ(d.graph(0).edge_count(), 3u);
  EXPECT_EQ(d.graph(1).node_count(), 2u);
  EXPECT_EQ(d.graph(1).edge_count(), 1u);
  std::vector<LabelId> tri(d.graph(0).labels().begin(),
                           d.graph(0).labels().end());
  EXPECT_EQ(tri, (std::vector<LabelId>{0, 0, 1}));
  EXPECT_EQ(d.graph(0).id(), "1");
}

TEST(TuParser, SymmetricPairIsOneEdge) {
  TempDir dir;
  auto p = dir / "D";
  write_tu(p, "1,2\n2,1\n", "1\n1\n2\n", "0\n1\n", "0\n0\n0\n");
  Dataset d = parse_tudataset(p, quiet());
  EXPECT_EQ(d.graph(0).edge_count(), 1u);
}

TEST(TuParser, ExplicitClassMap) {
  TuParseOptions o = quiet();
  o.class_map = {{1, 0}, {-1, 1}};
  Dataset d = parse_tudataset(kData / "tiny" / "TINY", o);
  EXPECT_EQ(d.labels, (std::vector<ClassId>{0, 1}));
}

TEST(TuParser, Errors) {
  TempDir dir;
  auto p = dir / "D";
  EXPECT_THROW(parse_tudataset(p, quiet()), IoError);

  write_tu(p, "1,3\n", "1\n1\n2\n", "0\n1\n", "0\n0\n0\n");
  EXPECT_THROW(parse_tudataset(p, quiet()), FormatError);  // cross-graph

  write_tu(p, "1,1\n", "1\n1\n2\n", "0\n1\n", "0\n0\n0\n");
  EXPECT_THROW(parse_tudataset(p, quiet()), FormatError);  // self-loop

  write_tu(p, "1,2\n", "1\n1\n2\n3\n", "0\n1\n2\n", "0\n0\n0\n0\n");
  EXPECT_THROW(parse_tudataset(p, quiet()), FormatError);  // three classes

  write_tu(p, "1,2\n", "2\n2\n1\n", "0\n1\n", "0\n0\n0\n");
  EXPECT_THROW(parse_tudataset(p, quiet()), FormatError);  // not ascending

  write_tu(p, "1,2\n", "1\n1\n2\n", "0\n0\n", "0\n0\n0\n");
  EXPECT_THROW(parse_tudataset(p, quiet()), InputError);  // single class
}

TEST(TuParser, AttributeFilesWarn) {
  TempDir dir;
  auto p = dir / "D";
  write_tu(p, "1,2\n", "1\n1\n2\n", "0\n1\n", "0\n0\n0\n");
  write_text(p.string() + "_node_attributes.txt", "0.5\n0.5\n0.5\n");
  std::vector<std::string> notes;
  TuParseOptions o;
  o.warn = [&](std::string_view m) { notes.emplace_back(m); };
  parse_tudataset(p, o);
  EXPECT_EQ(notes.size(), 1u);
}

// Independent count of graph ids and nodes straight from the indicator file.
std::pair<std::size_t, std::size_t> scan_indicator(
    const std::filesystem::path& f) {
  std::ifstream in(f);
  std::set<std::string> ids;
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    ids.insert(tok);
    ++lines;
  }
  return {ids.size(), lines};
}

TEST(TuParser, CountsMatchLineScanAndRoundTrip) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    Dataset d = testing::random_dataset(rng, 25, 9, 3);
    d.label_alphabet = {-4, 2, 9};
    TempDir dir;
    auto p = dir / "R";
    write_tudataset(d, p);
    auto [graphs, nodes] = scan_indicator(p.string() + "_graph_indicator.txt");
    Dataset back = parse_tudataset(p, quiet());
    ASSERT_EQ(back.size(), graphs);
    std::size_t total = 0;
    for (std::size_t g = 0; g < back.size(); ++g) {
      total += back.graph(g).node_count();
    }
    EXPECT_EQ(total, nodes);
    ASSERT_EQ(back.size(), d.size());
    EXPECT_EQ(back.labels, d.labels);
    for (std::size_t g = 0; g < d.size(); ++g) {
      EXPECT_EQ(back.graph(g).node_count(), d.graph(g).node_count());
      auto e1 = d.graph(g).edges();
      auto e2 = back.graph(g).edges();
      EXPECT_TRUE(std::equal(e1.begin(), e1.end(), e2.begin(), e2.end()));
      for (NodeIndex v = 0; v < d.graph(g).node_count(); ++v) {
        EXPECT_EQ(back.label_alphabet[back.graph(g).label(v)],
                  d.label_alphabet[d.graph(g).label(v)]);
      }
    }
  }
}

}  // namespace
}  // namespace wlbench
