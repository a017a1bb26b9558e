#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "domclone/descset.hpp"
#include "domclone/fingerprint.hpp"
#include "domclone/matcher.hpp"

namespace domclone {

enum class ReportFormat { csv, jsonl };

struct RunConfig {
  std::vector<std::string> input_roots;
  std::vector<std::string> extensions{".java"};
  MatchConfig match;
  HashScheme hashing = HashScheme::md5;
  MergeMode merge = MergeMode::identical;
  bool keep_call_names = true;
  std::string output_path;
  ReportFormat output_format = ReportFormat::csv;
  std::uint64_t seed = 0;
};

// Raised for malformed configuration; names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline std::string normalize_name(std::string s) {
  for (auto& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '-' || c == ' ') c = '_';
  }
  return s;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& field, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + v + "'");
  }
}

inline long long parse_int(const std::string& field, const std::string& v) {
  try {
    std::size_t used = 0;
    long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected an integer, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& field, const std::string& v) {
  const auto n = normalize_name(v);
  if (n == "true" || n == "on" || n == "yes" || n == "1") return true;
  if (n == "false" || n == "off" || n == "no" || n == "0") return false;
  throw ConfigError(field, "expected a boolean, got '" + v + "'");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

inline Metric parse_metric(const std::string& value) {
  const auto n = detail::normalize_name(value);
  if (n == "hamming") return Metric::hamming;
  if (n == "hamming_nopenalty") return Metric::hamming_nopenalty;
  if (n == "levenshtein") return Metric::levenshtein;
  if (n == "needleman_wunsch") return Metric::needleman_wunsch;
  if (n == "lcs") return Metric::lcs;
  if (n == "lcs_modified") return Metric::lcs_modified;
  static const std::vector<std::string> kUnsupported = {
      "ngram", "n_gram", "jaccard", "cosine", "cosinus", "jaro_winkler", "damerau_levenshtein"};
  if (std::find(kUnsupported.begin(), kUnsupported.end(), n) != kUnsupported.end()) {
    throw ConfigError("string_metric", "metric '" + value + "' is not supported");
  }
  throw ConfigError("string_metric", "unknown metric '" + value + "'");
}

inline HashScheme parse_hash_scheme(const std::string& value) {
  const auto n = detail::normalize_name(value);
  if (n == "none") return HashScheme::none;
  if (n == "prime4" || n == "4_byte" || n == "4byte") return HashScheme::prime4;
  if (n == "md5") return HashScheme::md5;
  if (n == "lsh") return HashScheme::lsh;
  throw ConfigError("hashing_algorithm", "unknown hashing algorithm '" + value + "'");
}

inline const char* hash_scheme_name(HashScheme h) {
  switch (h) {
    case HashScheme::none: return "none";
    case HashScheme::prime4: return "prime4";
    case HashScheme::md5: return "md5";
    case HashScheme::lsh: return "lsh";
  }
  return "?";
}

inline ReportFormat parse_report_format(const std::string& value) {
  const auto n = detail::normalize_name(value);
  if (n == "csv") return ReportFormat::csv;
  if (n == "jsonl") return ReportFormat::jsonl;
  throw ConfigError("output_format", "expected csv or jsonl, got '" + value + "'");
}

inline MergeMode parse_merge_mode(const std::string& value) {
  const auto n = detail::normalize_name(value);
  if (n == "none" || n == "off" || n == "false") return MergeMode::none;
  if (n == "identical" || n == "on" || n == "true") return MergeMode::identical;
  if (n == "near") return MergeMode::near;
  throw ConfigError("merge_paths", "expected none, identical or near, got '" + value + "'");
}

// Applies one key=value setting. Keys follow the parameter table names.
inline void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = detail::normalize_name(raw_key);
  auto& m = cfg.match;
  if (key == "similarity_threshold" || key == "tau") {
    m.tau = detail::parse_double(key, value);
    if (!(m.tau >= 0.0 && m.tau <= 1.0)) throw ConfigError(key, "must lie in [0, 1]");
  } else if (key == "minimum_clone_size" || key == "min_lines") {
    auto v = detail::parse_int(key, value);
    if (v < 0) throw ConfigError(key, "must be non-negative");
    m.min_clone_lines = static_cast<int>(v);
  } else if (key == "string_metric" || key == "metric") {
    m.metric = parse_metric(value);
  } else if (key == "hashing_algorithm" || key == "hash") {
    cfg.hashing = parse_hash_scheme(value);
  } else if (key == "max_set_factor") {
    m.max_set_factor = detail::parse_double(key, value);
    if (!(m.max_set_factor >= 1.0)) throw ConfigError(key, "must be at least 1");
  } else if (key == "max_path_length_diff") {
    auto v = detail::parse_int(key, value);
    if (v < 0) throw ConfigError(key, "must be non-negative");
    m.max_path_length_diff = static_cast<int>(v);
  } else if (key == "prefilter") {
    m.prefilter = detail::parse_bool(key, value);
  } else if (key == "copy_strategy") {
    m.copy_strategy = detail::parse_bool(key, value);
  } else if (key == "merge_paths") {
    cfg.merge = parse_merge_mode(value);
  } else if (key == "threads") {
    auto v = detail::parse_int(key, value);
    if (v < 1) throw ConfigError(key, "must be positive");
    m.threads = static_cast<unsigned>(v);
  } else if (key == "keep_call_names") {
    cfg.keep_call_names = detail::parse_bool(key, value);
  } else if (key == "input" || key == "input_roots") {
    cfg.input_roots = detail::split_list(value);
  } else if (key == "extensions") {
    cfg.extensions = detail::split_list(value);
    if (cfg.extensions.empty()) throw ConfigError(key, "needs at least one extension");
  } else if (key == "output" || key == "out" || key == "output_path") {
    cfg.output_path = value;
  } else if (key == "output_format" || key == "format") {
    cfg.output_format = parse_report_format(value);
  } else if (key == "seed") {
    auto v = detail::parse_int(key, value);
    if (v < 0) throw ConfigError(key, "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else {
    throw ConfigError(raw_key, "unknown configuration key");
  }
}

// Flat key=value lines; '#' starts a comment.
inline void load_config(RunConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key=value");
    }
    apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

}  // namespace domclone
