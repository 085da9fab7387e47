//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_EXPORT_H_
#define WLBENCH_EXPORT_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "wlbench/generator.h"
#include "wlbench/metrics.h"
#include "wlbench/splitter.h"

namespace wlbench {

// Schema of every file this library writes. Readers accept any 1.x file and
// reject other majors with VersionError.
inline constexpr std::string_view kSchemaVersion = "1.0";

struct BenchmarkMetadata {
  std::size_t wl_iterations = 0;
  std::size_t top_k = 0;
  // JSON object text describing the producing run; embedded verbatim (after
  // canonicalization) under metadata.run_config. Empty means {}.
  std::string run_config_json;
};

struct LoadedBenchmark {
  XaiBenchmark benchmark;
  SplitAssignment split;
  BenchmarkMetadata metadata;
  std::string fingerprint;  // sha256 of the canonical file bytes, hex
};

// Canonical bytes: sorted keys, two-space indent, shortest round-trip
// doubles, trailing newline. Throws InputError on non-finite values.
std::string serialize_benchmark(const XaiBenchmark& bench,
                                const SplitAssignment& split,
                                const BenchmarkMetadata& metadata);

// Writes serialize_benchmark() output; returns its fingerprint.
std::string write_benchmark(const XaiBenchmark& bench,
                            const SplitAssignment& split,
                            const BenchmarkMetadata& metadata,
                            const std::filesystem::path& path);

// Throws FormatError (with line:column) on malformed JSON or invalid
// contents, VersionError on an unknown schema major.
LoadedBenchmark parse_benchmark(std::string_view text,
                                std::string_view source_name = "<memory>");
LoadedBenchmark read_benchmark(const std::filesystem::path& path);

// Hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

struct MaskFile {
  std::string benchmark_fingerprint;
  std::string method;
  // graph_id -> one score per node.
  std::map<std::string, ImportanceMask> masks;
  std::string metadata_json;  // free-form object, embedded verbatim
};

std::string serialize_masks(const MaskFile& masks);
void write_masks(const MaskFile& masks, const std::filesystem::path& path);
MaskFile parse_masks(std::string_view text,
                     std::string_view source_name = "<memory>");
MaskFile read_masks(const std::filesystem::path& path);

// Throws IntegrityError when the mask file was produced for another
// benchmark or does not cover every test sample with one score per node.
void check_masks(const MaskFile& masks, const LoadedBenchmark& bench);

// Score matrices as CSV: header "row,<method>,...", one line per row.
ScoreMatrix parse_score_matrix_csv(std::string_view text,
                                   std::string_view source_name = "<memory>");
ScoreMatrix read_score_matrix_csv(const std::filesystem::path& path);
std::string format_score_matrix_csv(const ScoreMatrix& m);

// Report documents (canonical JSON text).
std::string plausibility_report_json(
    std::string_view benchmark_name, std::string_view fingerprint,
    const std::map<std::string, PlausibilityReport>& by_method,
    std::string_view run_config_json);
std::string rank_report_json(const RankReport& report,
                             std::span<const CurvePoint> curve,
                             std::string_view run_config_json);

// Writes bytes to path via a temporary sibling and rename.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace wlbench

#endif  // WLBENCH_EXPORT_H_
