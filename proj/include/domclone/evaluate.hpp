#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "domclone/report.hpp"
#include "domclone/types.hpp"

namespace domclone {

struct Locator {
  std::string file;
  int start_line = 0;
  int end_line = 0;

  friend auto operator<=>(const Locator&, const Locator&) = default;
  friend bool operator==(const Locator&, const Locator&) = default;
};

struct TruthPair {
  Locator a;
  Locator b;
  std::string label;
};

struct GroundTruth {
  std::vector<TruthPair> pairs;
};

// Rows `file1,start1,end1,file2,start2,end2,label`. Unordered duplicates are
// dropped.
inline GroundTruth read_ground_truth(std::istream& in) {
  GroundTruth gt;
  std::set<std::pair<Locator, Locator>> seen;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.empty()) continue;
    auto f = detail::split_csv_line(line);
    if (f.size() != 7) throw ReportError("truth line " + std::to_string(lineno) + ": expected 7 fields");
    TruthPair t;
    try {
      t.a = {f[0], std::stoi(f[1]), std::stoi(f[2])};
      t.b = {f[3], std::stoi(f[4]), std::stoi(f[5])};
    } catch (const std::logic_error&) {
      throw ReportError("truth line " + std::to_string(lineno) + ": bad line number");
    }
    t.label = f[6];
    if (t.b < t.a) std::swap(t.a, t.b);
    if (seen.insert({t.a, t.b}).second) gt.pairs.push_back(std::move(t));
  }
  return gt;
}

inline GroundTruth read_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReportError("cannot read ground truth " + path);
  return read_ground_truth(in);
}

struct LabelRecall {
  std::size_t known = 0;
  std::size_t matched = 0;
  double recall() const { return known ? static_cast<double>(matched) / static_cast<double>(known) : 0.0; }
};

struct EvalReport {
  std::map<std::string, LabelRecall> per_label;
  LabelRecall overall;
  std::size_t reported = 0;
  std::size_t reported_matched = 0;  // reported pairs that hit some truth pair
  std::optional<double> precision;   // empty when nothing was reported
  double wall_seconds = 0.0;
  std::vector<std::string> diagnostics;
};

namespace detail {

// Paths match when equal or when one is a component-wise suffix of the other.
inline bool same_file(const std::string& x, const std::string& y) {
  if (x == y) return true;
  const auto& longer = x.size() > y.size() ? x : y;
  const auto& shorter = x.size() > y.size() ? y : x;
  return longer.size() > shorter.size() && longer.compare(longer.size() - shorter.size(), shorter.size(), shorter) == 0 &&
         longer[longer.size() - shorter.size() - 1] == '/';
}

inline double line_overlap(const Locator& truth, const CodeFragment& f) {
  const int lo = std::max(truth.start_line, f.start_line);
  const int hi = std::min(truth.end_line, f.end_line);
  if (hi < lo) return 0.0;
  const int len = std::max(truth.end_line - truth.start_line + 1, f.source_line_count);
  return static_cast<double>(hi - lo + 1) / static_cast<double>(len);
}

inline bool covers(const Locator& t, const CodeFragment& f, double threshold) {
  return same_file(t.file, f.file_path) && line_overlap(t, f) >= threshold;
}

inline bool pair_matches(const TruthPair& t, const ClonePair& p, double threshold) {
  return (covers(t.a, p.left, threshold) && covers(t.b, p.right, threshold)) ||
         (covers(t.a, p.right, threshold) && covers(t.b, p.left, threshold));
}

}  // namespace detail

// A truth pair is recalled when some reported pair overlaps both of its
// fragments by at least `overlap` of the longer line range. When
// `corpus_files` is given, truth locators outside it are reported.
inline EvalReport evaluate(const std::vector<ClonePair>& reported, const GroundTruth& truth,
                           double overlap = 0.7, const std::vector<std::string>* corpus_files = nullptr) {
  EvalReport r;
  r.reported = reported.size();
  std::vector<bool> hit(reported.size(), false);
  for (const auto& t : truth.pairs) {
    auto& label = r.per_label[t.label];
    ++label.known;
    ++r.overall.known;
    if (corpus_files) {
      for (const Locator* l : {&t.a, &t.b}) {
        bool found = std::any_of(corpus_files->begin(), corpus_files->end(),
                                 [&](const std::string& f) { return detail::same_file(l->file, f); });
        if (!found) r.diagnostics.push_back("unresolvable locator " + l->file + ":" + std::to_string(l->start_line));
      }
    }
    bool any = false;
    for (std::size_t i = 0; i < reported.size(); ++i) {
      if (detail::pair_matches(t, reported[i], overlap)) {
        hit[i] = true;
        any = true;
      }
    }
    if (any) {
      ++label.matched;
      ++r.overall.matched;
    }
  }
  r.reported_matched = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  if (r.reported) r.precision = static_cast<double>(r.reported_matched) / static_cast<double>(r.reported);
  return r;
}

}  // namespace domclone
