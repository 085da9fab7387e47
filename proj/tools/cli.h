//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_TOOLS_CLI_H_
#define WLBENCH_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wlbench/dataset.h"

namespace wlbench::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInput = 2,
  kIntegrity = 3,
};

struct RunConfig {
  std::string command;
  std::filesystem::path dataset;
  std::size_t wl_iters = 3;
  std::size_t top_k = 10;
  std::uint64_t seed = 0;
  std::size_t min_size = 10;
  double min_balance = 0.0;
  std::size_t max_outputs = 10;
  std::filesystem::path out;
  double alpha = 0.05;
  std::map<RawLabel, ClassId> class_map;
  std::vector<std::filesystem::path> benchmarks;
  std::vector<std::filesystem::path> masks;
  std::filesystem::path matrix;
  std::size_t orderings = 1000;
  std::string baseline = "random";

  // Throws InputError on out-of-range values.
  void validate() const;
  // JSON object text embedded in every output file.
  std::string to_json() const;
};

// Each command writes its data files under config.out and progress lines to
// `log`. Errors propagate as wlbench exceptions.
void cmd_generate(const RunConfig& config, std::ostream& log);
void cmd_split(const RunConfig& config, std::ostream& log);
void cmd_evaluate(const RunConfig& config, std::ostream& log);
void cmd_rank(const RunConfig& config, std::ostream& log);
void cmd_baseline_masks(const RunConfig& config, std::ostream& log);

// Parses argv, runs the command, maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& log);

}  // namespace wlbench::cli

#endif  // WLBENCH_TOOLS_CLI_H_
