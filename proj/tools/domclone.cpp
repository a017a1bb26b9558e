#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "domclone/config.hpp"
#include "domclone/evaluate.hpp"
#include "domclone/pipeline.hpp"
#include "domclone/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void print_eval(std::ostream& out, const domclone::EvalReport& r) {
  for (const auto& [label, rec] : r.per_label) {
    out << "recall " << label << " " << rec.matched << "/" << rec.known << " " << rec.recall() << "\n";
  }
  out << "recall all " << r.overall.matched << "/" << r.overall.known << " " << r.overall.recall() << "\n";
  out << "reported " << r.reported << "\n";
  out << "precision ";
  if (r.precision) out << *r.precision << "\n";
  else out << "N/A\n";
  out << "wall_seconds " << r.wall_seconds << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace domclone;
  CLI::App app{"Method-level code clone detector based on dominator-tree path sets"};

  std::string config_file;
  std::vector<std::string> inputs;
  std::optional<double> tau;
  std::optional<int> min_lines;
  std::optional<std::string> metric, hash, format, merge;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string eval_path;
  bool no_prefilter = false, no_merge = false, no_copy = false;
  bool keep_names = false, abstract_names = false;

  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--input", inputs, "input root directories or files");
  app.add_option("--tau", tau, "similarity threshold in [0, 1]");
  app.add_option("--min-lines", min_lines, "minimum clone size in source lines");
  app.add_option("--metric", metric, "hamming, hamming_nopenalty, levenshtein, needleman_wunsch, lcs, lcs_modified");
  app.add_option("--hash", hash, "none, prime4, md5, lsh");
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("--no-prefilter", no_prefilter, "disable the size and path-length filters");
  app.add_flag("--no-merge", no_merge, "keep duplicate paths unmerged");
  app.add_option("--merge", merge, "path merging: none, identical, near");
  app.add_flag("--no-copy-strategy", no_copy, "compare identical fragments individually");
  auto* keep = app.add_flag("--keep-call-names", keep_names, "encode callees as constant-pool references");
  app.add_flag("--abstract-call-names", abstract_names, "encode every call as a bare CALL")->excludes(keep);
  app.add_option("--format", format, "csv or jsonl");
  app.add_option("--out", out_path, "report file");
  app.add_option("--seed", seed, "LSH seed");
  app.add_option("--eval", eval_path, "ground-truth CSV to evaluate the report against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) {
        std::cerr << "cannot read config file " << config_file << "\n";
        return kExitConfig;
      }
      load_config(cfg, in);
    }
    if (!inputs.empty()) cfg.input_roots = inputs;
    if (tau) cfg.match.tau = *tau;
    if (min_lines) apply_setting(cfg, "minimum_clone_size", std::to_string(*min_lines));
    if (metric) apply_setting(cfg, "string_metric", *metric);
    if (hash) apply_setting(cfg, "hashing_algorithm", *hash);
    if (threads) apply_setting(cfg, "threads", std::to_string(*threads));
    if (seed) cfg.seed = *seed;
    if (format) apply_setting(cfg, "output_format", *format);
    if (merge) apply_setting(cfg, "merge_paths", *merge);
    if (no_merge) cfg.merge = MergeMode::none;
    if (no_prefilter) cfg.match.prefilter = false;
    if (no_copy) cfg.match.copy_strategy = false;
    if (keep_names) cfg.keep_call_names = true;
    if (abstract_names) cfg.keep_call_names = false;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (cfg.input_roots.empty()) throw ConfigError("input", "at least one input root is required");
    if (cfg.output_path.empty()) throw ConfigError("out", "an output path is required");
    cfg.match.validate();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto t0 = std::chrono::steady_clock::now();
  PipelineResult res;
  try {
    res = run_pipeline(cfg);
    write_report(cfg.output_path, res.pairs, cfg.output_format);
    std::ofstream log(cfg.output_path + ".log");
    if (!log) throw ReportError("cannot write log " + cfg.output_path + ".log");
    write_log(log, res, cfg);
  } catch (const SourceError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ReportError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitIo;
  }

  if (!eval_path.empty()) {
    try {
      auto truth = read_ground_truth(eval_path);
      auto report = evaluate(res.pairs, truth, 0.7, &res.files);
      report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      print_eval(std::cout, report);
      for (const auto& d : report.diagnostics) std::cerr << "eval: " << d << "\n";
    } catch (const ReportError& e) {
      std::cerr << "evaluation error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  return 0;
}
