#pragma once

#include <atomic>
#include <chrono>
#include <fstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "domclone/config.hpp"
#include "domclone/descset.hpp"
#include "domclone/fingerprint.hpp"
#include "domclone/frontend.hpp"
#include "domclone/matcher.hpp"
#include "domclone/report.hpp"

namespace domclone {

struct PipelineStats {
  std::size_t files = 0;
  std::size_t fragments = 0;
  std::size_t matched_fragments = 0;  // at or above the minimum size
  std::size_t vocabulary = 0;
  std::size_t pool_entries = 0;
  double seconds_sets = 0.0;
  double seconds_match = 0.0;
};

struct PipelineResult {
  std::vector<ClonePair> pairs;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> files;
  PipelineStats stats;
};

namespace detail {

template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// Set generation and matching for in-memory sources, given as (path, text).
inline PipelineResult run_on_sources(const std::vector<std::pair<std::string, std::string>>& sources,
                                     const RunConfig& cfg) {
  cfg.match.validate();
  PipelineResult res;
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<FileAnalysis> analyses(sources.size());
  detail::parallel_for(sources.size(), cfg.match.threads, [&](std::size_t i) {
    analyses[i] = analyze_source(sources[i].second, sources[i].first, cfg.match.min_clone_lines);
  });

  // Interning runs serially in file and source order so pool numbering is
  // the same for any thread count.
  ConstantPool pool;
  std::vector<DescriptionSet> dsets;
  for (auto& fa : analyses) {
    res.files.push_back(fa.file_path);
    res.diagnostics.insert(res.diagnostics.end(), fa.diagnostics.begin(), fa.diagnostics.end());
    for (auto& m : fa.methods) {
      auto tree = abstract_tree(m.raw_tree, pool, cfg.keep_call_names);
      dsets.push_back(merge_paths(extract_description_set(tree, m.fragment), cfg.merge));
      res.stats.matched_fragments += !m.below_min_lines;
    }
  }
  res.stats.files = sources.size();
  res.stats.fragments = dsets.size();
  res.stats.pool_entries = pool.size();

  // Vocabulary pass, then fingerprints mapped to dense ids.
  std::unordered_map<std::string, std::uint32_t> vocab_ids;
  std::vector<AbstractInstruction> vocab;
  for (const auto& d : dsets) {
    for (const auto& p : d.paths) {
      for (const auto& instr : p) {
        auto [it, inserted] = vocab_ids.try_emplace(serialize_instruction(instr), vocab.size());
        if (inserted) vocab.push_back(instr);
      }
    }
  }
  res.stats.vocabulary = vocab.size();
  LshIndex index;
  if (cfg.hashing == HashScheme::lsh) index = build_lsh_index(vocab, cfg.seed);
  FingerprintInterner<Fingerprint> interner;
  std::vector<std::uint32_t> id_of(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    id_of[i] = interner.id(fingerprint_of(serialize_instruction(vocab[i]), cfg.hashing, &index));
  }
  std::vector<IdSet> sets;
  sets.reserve(dsets.size());
  for (const auto& d : dsets) {
    IdSet s;
    s.fragment = d.fragment;
    s.multiplicity = d.multiplicity;
    s.original_count = d.original_count;
    for (const auto& p : d.paths) {
      std::vector<std::uint32_t> ids;
      ids.reserve(p.size());
      for (const auto& instr : p) ids.push_back(id_of[vocab_ids.at(serialize_instruction(instr))]);
      s.paths.push_back(std::move(ids));
    }
    sets.push_back(std::move(s));
  }
  res.stats.seconds_sets = detail::seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  res.pairs = match_corpus(sets, cfg.match);
  res.stats.seconds_match = detail::seconds_since(t1);
  return res;
}

// Discovers and reads the corpus, then runs the pipeline. Unreadable roots
// raise SourceError; an unreadable file becomes a diagnostic.
inline PipelineResult run_pipeline(const RunConfig& cfg) {
  auto files = discover_sources(cfg.input_roots, cfg.extensions);
  std::vector<std::pair<std::string, std::string>> sources;
  std::vector<Diagnostic> read_errors;
  for (const auto& f : files) {
    try {
      sources.emplace_back(f, read_text_file(f));
    } catch (const SourceError& e) {
      read_errors.push_back({Severity::error, f, 0, e.what()});
    }
  }
  auto res = run_on_sources(sources, cfg);
  res.diagnostics.insert(res.diagnostics.begin(), read_errors.begin(), read_errors.end());
  return res;
}

inline void write_log(std::ostream& out, const PipelineResult& res, const RunConfig& cfg) {
  out << "files " << res.stats.files << "\n";
  out << "fragments " << res.stats.fragments << "\n";
  out << "fragments_matched " << res.stats.matched_fragments << "\n";
  out << "vocabulary " << res.stats.vocabulary << "\n";
  out << "pool_entries " << res.stats.pool_entries << "\n";
  out << "metric " << metric_name(cfg.match.metric) << "\n";
  out << "hashing " << hash_scheme_name(cfg.hashing) << "\n";
  out << "tau " << cfg.match.tau << "\n";
  out << "pairs " << res.pairs.size() << "\n";
  out << "seconds_sets " << res.stats.seconds_sets << "\n";
  out << "seconds_match " << res.stats.seconds_match << "\n";
  for (const auto& d : res.diagnostics) {
    out << severity_name(d.severity) << " " << d.file_path << ":" << d.line << " " << d.message << "\n";
  }
}

}  // namespace domclone
