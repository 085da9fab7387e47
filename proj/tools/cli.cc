//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wlbench/error.h"
#include "wlbench/export.h"
#include "wlbench/generator.h"
#include "wlbench/metrics.h"
#include "wlbench/splitter.h"

namespace wlbench::cli {

using nlohmann::json;

void RunConfig::validate() const {
  if (command == "generate") {
    if (dataset.empty()) throw InputError("--dataset is required");
    if (top_k == 0) throw InputError("--top-k must be >= 1");
    if (min_size < 10) {
      throw InputError("--min-size must be >= 10 (splits need 10 samples)");
    }
    if (max_outputs == 0) throw InputError("--max-outputs must be >= 1");
  }
  if (min_balance < 0.0 || min_balance > 1.0) {
    throw InputError("--min-balance must lie in [0, 1]");
  }
  if (alpha != 0.05 && alpha != 0.10) {
    throw InputError("--alpha must be 0.05 or 0.1");
  }
  if (out.empty()) throw InputError("--out is required");
  if ((command == "split" || command == "baseline-masks") &&
      benchmarks.size() != 1) {
    throw InputError(command + " takes exactly one --benchmark");
  }
  if (command == "evaluate" && (benchmarks.empty() || masks.empty())) {
    throw InputError("evaluate needs --benchmark and --masks");
  }
  if (command == "rank" && matrix.empty()) {
    throw InputError("rank needs --matrix");
  }
  if (command == "baseline-masks" && baseline != "random" && baseline != "gt") {
    throw InputError("--kind must be 'random' or 'gt'");
  }
}

std::string RunConfig::to_json() const {
  json j = {{"command", command}, {"seed", seed}};
  if (command == "generate") {
    json cmap = json::object();
    for (const auto& [raw, y] : class_map) cmap[std::to_string(raw)] = y;
    j.update({{"dataset", dataset.string()},
              {"wl_iters", wl_iters},
              {"top_k", top_k},
              {"min_size", min_size},
              {"min_balance", min_balance},
              {"max_outputs", max_outputs},
              {"class_map", cmap}});
  }
  if (command == "evaluate" || command == "rank") {
    j["alpha"] = alpha;
    j["orderings"] = orderings;
  }
  if (command == "baseline-masks") j["kind"] = baseline;
  auto paths = [](const std::vector<std::filesystem::path>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.string());
    return a;
  };
  if (!benchmarks.empty()) j["benchmarks"] = paths(benchmarks);
  if (!masks.empty()) j["masks"] = paths(masks);
  if (!matrix.empty()) j["matrix"] = matrix.string();
  return j.dump();
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string iteration_cell(const XaiBenchmark& b, ClassId y) {
  const MotifSpec* m = b.motif_for(y);
  return m ? std::to_string(m->iteration) : "-";
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

struct PendingFile {
  std::filesystem::path path;
  std::string bytes;
};

// Everything is rendered before the first write, so a failing run leaves
// no partial output.
void write_all(const std::filesystem::path& dir,
               const std::vector<PendingFile>& files) {
  ensure_dir(dir);
  for (const auto& f : files) write_file_atomic(dir / f.path, f.bytes);
}

std::string stem_of(const std::filesystem::path& p) {
  return p.stem().string();
}

}  // namespace

void cmd_generate(const RunConfig& config, std::ostream& log) {
  config.validate();
  TuParseOptions options;
  options.class_map = config.class_map;
  options.warn = [&](std::string_view msg) {
    log << "warning: " << msg << '\n';
  };
  Dataset dataset = parse_tudataset(config.dataset, options);
  log << "parsed " << dataset.name << ": " << dataset.size() << " graphs, "
      << dataset.label_alphabet_size() << " node labels\n";

  // Bounded pool: ranking is a total order, so pruning to the current top
  // never drops a benchmark that belongs in the final top.
  std::vector<XaiBenchmark> pool;
  const std::size_t prune_at = 4 * config.max_outputs;
  auto prune = [&] {
    pool = rank_candidates(std::move(pool), config.min_size,
                           config.min_balance);
    if (pool.size() > config.max_outputs) pool.resize(config.max_outputs);
  };
  EnumerationReport report = enumerate_benchmarks(
      dataset, config.wl_iters, config.top_k, [&](XaiBenchmark&& b) {
        if (b.samples.size() < config.min_size ||
            b.balance() < config.min_balance) {
          return;
        }
        pool.push_back(std::move(b));
        if (pool.size() >= prune_at) prune();
      });
  prune();
  log << "enumerated " << report.attempted << " candidate tasks: "
      << report.yielded << " yielded, " << report.rejected.size()
      << " rejected, " << pool.size() << " kept\n";

  const std::string run_config = config.to_json();
  BenchmarkMetadata meta{config.wl_iters, config.top_k, run_config};
  std::vector<PendingFile> files;
  std::ostringstream summary;
  summary << "file\tmode\twl_iter_class0\twl_iter_class1\tclass0\tclass1\t"
             "total\tbalance\tfingerprint\n";
  json written = json::array();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const XaiBenchmark& b = pool[i];
    SplitAssignment split = stratified_split(b, config.seed);
    char name[32];
    std::snprintf(name, sizeof name, "benchmark_%03zu.json", i);
    std::string bytes = serialize_benchmark(b, split, meta);
    std::string fp = sha256_hex(bytes);
    auto counts = b.class_counts();
    summary << name << '\t' << to_string(b.mode) << '\t'
            << iteration_cell(b, 0) << '\t' << iteration_cell(b, 1) << '\t'
            << counts[0] << '\t' << counts[1] << '\t' << b.samples.size()
            << '\t' << fixed(b.balance(), 2) << '\t' << fp << '\n';
    written.push_back({{"file", name},
                       {"name", b.canonical_name()},
                       {"fingerprint", fp}});
    files.push_back({name, std::move(bytes)});
  }

  json candidates = {{"class0", json::array()}, {"class1", json::array()}};
  for (ClassId y : {0, 1}) {
    const auto& list = y == 0 ? report.candidates.class0
                              : report.candidates.class1;
    for (const auto& m : list) {
      candidates[y == 0 ? "class0" : "class1"].push_back(
          {{"iteration", m.iteration},
           {"canonical_key", m.canonical_key},
           {"freq0", m.frequency.freq0},
           {"freq1", m.frequency.freq1},
           {"weak", m.weak}});
    }
  }
  json rejected = json::array();
  for (const auto& r : report.rejected) {
    rejected.push_back({{"mode", to_string(r.mode)},
                        {"motifs", r.motif_keys},
                        {"reason", r.reason}});
  }
  json gen = {{"schema_version", kSchemaVersion},
              {"dataset", dataset.name},
              {"attempted", report.attempted},
              {"yielded", report.yielded},
              {"candidates", candidates},
              {"candidates_truncated", report.candidates.truncated},
              {"rejected", rejected},
              {"written", written},
              {"run_config", json::parse(run_config)}};
  files.push_back({"summary.tsv", summary.str()});
  files.push_back({"generate_report.json", gen.dump(2) + "\n"});
  write_all(config.out, files);
  log << "wrote " << pool.size() << " benchmark(s) to " << config.out.string()
      << '\n';
}

void cmd_split(const RunConfig& config, std::ostream& log) {
  config.validate();
  LoadedBenchmark loaded = read_benchmark(config.benchmarks.front());
  SplitAssignment split = stratified_split(loaded.benchmark, config.seed);
  BenchmarkMetadata meta = loaded.metadata;
  meta.run_config_json = config.to_json();
  std::string bytes = serialize_benchmark(loaded.benchmark, split, meta);
  auto parent = config.out.parent_path();
  if (!parent.empty()) ensure_dir(parent);
  write_file_atomic(config.out, bytes);
  auto counts = split.counts();
  log << "split " << counts[0] << "/" << counts[1] << "/" << counts[2]
      << " -> " << config.out.string() << '\n';
}

namespace {

void write_rank_outputs(const ScoreMatrix& matrix, const RunConfig& config,
                        std::vector<PendingFile>& files, std::ostream& log) {
  RankReport report = rank_report(matrix, config.alpha);
  auto curve = friedman_curve(matrix, config.orderings, config.seed);
  files.push_back(
      {"rank_report.json", rank_report_json(report, curve, config.to_json())});
  std::ostringstream tsv;
  tsv << "n\tprefix_p\tmin_p\tmedian_p\tmax_p\n";
  for (const auto& pt : curve) {
    tsv << pt.n << '\t' << json(pt.prefix_p).dump() << '\t'
        << json(pt.min_p).dump() << '\t' << json(pt.median_p).dump() << '\t'
        << json(pt.max_p).dump() << '\n';
  }
  files.push_back({"friedman_curve.tsv", tsv.str()});
  log << "friedman chi2=" << report.friedman.chi2
      << " p=" << report.friedman.p_value
      << " CD=" << report.critical_difference << " best="
      << matrix.methods[report.order.front()]
      << (report.best_isolated ? " (isolated)" : "") << '\n';
}

}  // namespace

void cmd_evaluate(const RunConfig& config, std::ostream& log) {
  config.validate();
  std::vector<LoadedBenchmark> benches;
  for (const auto& p : config.benchmarks) benches.push_back(read_benchmark(p));
  std::vector<MaskFile> mask_files;
  for (const auto& p : config.masks) mask_files.push_back(read_masks(p));

  // method -> per-benchmark report
  std::vector<std::map<std::string, PlausibilityReport>> reports(
      benches.size());
  for (std::size_t mi = 0; mi < mask_files.size(); ++mi) {
    const MaskFile& mf = mask_files[mi];
    auto it = std::find_if(benches.begin(), benches.end(), [&](const auto& b) {
      return b.fingerprint == mf.benchmark_fingerprint;
    });
    if (it == benches.end()) {
      throw IntegrityError(config.masks[mi].string() +
                           ": fingerprint " + mf.benchmark_fingerprint +
                           " matches none of the given benchmarks");
    }
    check_masks(mf, *it);
    auto& slot = reports[static_cast<std::size_t>(it - benches.begin())];
    if (slot.count(mf.method)) {
      throw InputError("two mask files for method '" + mf.method +
                       "' on " + it->benchmark.canonical_name());
    }
    slot[mf.method] = plausibility(it->benchmark, it->split, mf.masks);
  }

  std::vector<PendingFile> files;
  const std::string run_config = config.to_json();
  std::vector<std::string> methods;
  for (const auto& r : reports) {
    for (const auto& [m, _] : r) {
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
        methods.push_back(m);
      }
    }
  }
  std::sort(methods.begin(), methods.end());

  std::ostringstream table;
  table << "task\tclass";
  for (const auto& m : methods) table << '\t' << m;
  table << '\n';
  ScoreMatrix matrix;
  matrix.methods = methods;
  for (std::size_t bi = 0; bi < benches.size(); ++bi) {
    std::string task = stem_of(config.benchmarks[bi]);
    files.push_back({"plausibility_" + task + ".json",
                     plausibility_report_json(
                         benches[bi].benchmark.canonical_name(),
                         benches[bi].fingerprint, reports[bi], run_config)});
    for (ClassId y : {0, 1}) {
      if (benches[bi].benchmark.motif_for(y) == nullptr) continue;
      table << task << "\tclass " << y;
      std::vector<double> row;
      bool complete = true;
      for (const auto& m : methods) {
        auto it = reports[bi].find(m);
        const ClassPlausibility* cell = nullptr;
        if (it != reports[bi].end()) {
          for (const auto& r : it->second.rows) {
            if (r.y == y) cell = &r;
          }
        }
        if (cell && cell->n_evaluated > 0) {
          table << '\t' << fixed(cell->mean, 3) << " ± "
                << fixed(cell->stddev, 3);
          row.push_back(cell->mean);
        } else {
          table << "\t-";
          complete = false;
        }
      }
      table << '\n';
      if (complete) {
        matrix.row_names.push_back(task + "/class" + std::to_string(y));
        matrix.rows.push_back(std::move(row));
      }
    }
  }
  files.push_back({"plausibility.tsv", table.str()});
  if (!methods.empty()) {
    files.push_back({"scores.csv", format_score_matrix_csv(matrix)});
  }
  if (matrix.row_count() >= 2 && matrix.method_count() >= 2 &&
      matrix.method_count() <= 10) {
    write_rank_outputs(matrix, config, files, log);
  } else {
    log << "rank statistics skipped: need >= 2 complete rows and 2..10 "
           "methods (have "
        << matrix.row_count() << "x" << matrix.method_count() << ")\n";
  }
  write_all(config.out, files);
  log << "evaluated " << mask_files.size() << " mask file(s) over "
      << benches.size() << " benchmark(s)\n";
}

void cmd_rank(const RunConfig& config, std::ostream& log) {
  config.validate();
  ScoreMatrix matrix = read_score_matrix_csv(config.matrix);
  std::vector<PendingFile> files;
  write_rank_outputs(matrix, config, files, log);
  write_all(config.out, files);
}

void cmd_baseline_masks(const RunConfig& config, std::ostream& log) {
  config.validate();
  LoadedBenchmark loaded = read_benchmark(config.benchmarks.front());
  MaskFile mf;
  mf.benchmark_fingerprint = loaded.fingerprint;
  mf.method = config.baseline == "gt" ? "GroundTruth" : "Random";
  mf.metadata_json = config.to_json();
  std::mt19937_64 rng(config.seed);
  const auto& samples = loaded.benchmark.samples;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (loaded.split.parts[i] != SplitPart::kTest) continue;
    const auto& s = samples[i];
    ImportanceMask scores(s.graph->node_count(), 0.0);
    for (std::size_t v = 0; v < scores.size(); ++v) {
      if (config.baseline == "gt") {
        scores[v] = s.mask.contains(static_cast<NodeIndex>(v)) ? 1.0 : 0.0;
      } else {
        scores[v] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      }
    }
    mf.masks.emplace(s.graph->id(), std::move(scores));
  }
  auto parent = config.out.parent_path();
  if (!parent.empty()) ensure_dir(parent);
  write_masks(mf, config.out);
  log << "wrote " << mf.masks.size() << " " << mf.method << " mask(s) to "
      << config.out.string() << '\n';
}

namespace {

std::map<RawLabel, ClassId> parse_class_map(const std::string& text) {
  std::map<RawLabel, ClassId> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw InputError("--class-map entries look like RAW:CLASS, got '" +
                       item + "'");
    }
    try {
      std::size_t used = 0;
      RawLabel raw = std::stoll(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      std::string cls = item.substr(colon + 1);
      if (cls != "0" && cls != "1") throw std::invalid_argument(item);
      out[raw] = cls == "1" ? 1 : 0;
    } catch (const std::logic_error&) {
      throw InputError("bad --class-map entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& log) {
  CLI::App app{"Build graph-classification explainability benchmarks from "
               "WL color statistics and score explainers against them."};
  app.require_subcommand(1);
  RunConfig config;
  std::string class_map;

  auto* gen = app.add_subcommand("generate",
                                 "Mine WL motifs and write benchmark files");
  gen->add_option("--dataset", config.dataset,
                  "TU dataset prefix (e.g. data/NCI1/NCI1)")
      ->required();
  gen->add_option("--wl-iters", config.wl_iters, "WL iterations L")
      ->capture_default_str();
  gen->add_option("--top-k", config.top_k, "Candidate colors per class K")
      ->capture_default_str();
  gen->add_option("--seed", config.seed, "Split seed")->capture_default_str();
  gen->add_option("--min-size", config.min_size, "Minimum samples")
      ->capture_default_str();
  gen->add_option("--min-balance", config.min_balance,
                  "Minimum minority/majority ratio")
      ->capture_default_str();
  gen->add_option("--max-outputs", config.max_outputs,
                  "Number of top-ranked benchmarks to write")
      ->capture_default_str();
  gen->add_option("--class-map", class_map,
                  "Raw graph label to class, e.g. -1:0,1:1");
  gen->add_option("--out", config.out, "Output directory")->required();

  auto* split = app.add_subcommand("split", "Re-split a benchmark file");
  split->add_option("--benchmark", config.benchmarks, "Benchmark file")
      ->required();
  split->add_option("--seed", config.seed, "Split seed")->capture_default_str();
  split->add_option("--out", config.out, "Output benchmark file")->required();

  auto* eval = app.add_subcommand(
      "evaluate", "Plausibility and explainer ranking from mask files");
  eval->add_option("--benchmark", config.benchmarks, "Benchmark file(s)")
      ->required();
  eval->add_option("--masks", config.masks, "Mask file(s)")->required();
  eval->add_option("--alpha", config.alpha, "Nemenyi level (0.05 or 0.1)")
      ->capture_default_str();
  eval->add_option("--seed", config.seed, "Seed for the subset envelope")
      ->capture_default_str();
  eval->add_option("--orderings", config.orderings,
                   "Random row subsets per size for the Friedman curve")
      ->capture_default_str();
  eval->add_option("--out", config.out, "Output directory")->required();

  auto* rank = app.add_subcommand(
      "rank", "Friedman test and Nemenyi cliques over a score matrix CSV");
  rank->add_option("--matrix", config.matrix, "CSV: row,<method>,...")
      ->required();
  rank->add_option("--alpha", config.alpha, "Nemenyi level (0.05 or 0.1)")
      ->capture_default_str();
  rank->add_option("--seed", config.seed, "Seed for the subset envelope")
      ->capture_default_str();
  rank->add_option("--orderings", config.orderings,
                   "Random row subsets per size for the Friedman curve")
      ->capture_default_str();
  rank->add_option("--out", config.out, "Output directory")->required();

  auto* base = app.add_subcommand(
      "baseline-masks", "Write Random or ground-truth masks for a benchmark");
  base->add_option("--benchmark", config.benchmarks, "Benchmark file")
      ->required();
  base->add_option("--kind", config.baseline, "random | gt")
      ->capture_default_str();
  base->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  base->add_option("--out", config.out, "Output mask file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    int code = app.exit(e, out, err);
    log << out.str() << err.str();
    return code == 0 ? kOk : kInput;
  }

  try {
    config.class_map = parse_class_map(class_map);
    for (auto* sub : {gen, split, eval, rank, base}) {
      if (sub->parsed()) config.command = sub->get_name();
    }
    if (config.command == "generate") cmd_generate(config, log);
    if (config.command == "split") cmd_split(config, log);
    if (config.command == "evaluate") cmd_evaluate(config, log);
    if (config.command == "rank") cmd_rank(config, log);
    if (config.command == "baseline-masks") cmd_baseline_masks(config, log);
  } catch (const IntegrityError& e) {
    log << "error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace wlbench::cli
