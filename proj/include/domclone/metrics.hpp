#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace domclone {

struct PathDistance {
  std::size_t raw = 0;
  double normalized = 0.0;  // raw / max(|p|, |q|)
  bool forced_clone = false;
};

enum class Metric { hamming, hamming_nopenalty, levenshtein, needleman_wunsch, lcs, lcs_modified };

inline const char* metric_name(Metric m) {
  switch (m) {
    case Metric::hamming: return "hamming";
    case Metric::hamming_nopenalty: return "hamming_nopenalty";
    case Metric::levenshtein: return "levenshtein";
    case Metric::needleman_wunsch: return "needleman_wunsch";
    case Metric::lcs: return "lcs";
    case Metric::lcs_modified: return "lcs_modified";
  }
  return "?";
}

template <typename Seq>
std::span<const typename Seq::value_type> as_span(const Seq& s) {
  return {s.data(), s.size()};
}

namespace detail {

inline PathDistance make_distance(std::size_t raw, std::size_t n, std::size_t m) {
  const std::size_t len = std::max(n, m);
  return {raw, len ? static_cast<double>(raw) / static_cast<double>(len) : 0.0, false};
}

}  // namespace detail

template <typename T>
std::size_t hamming_raw(std::span<const T> p, std::span<const T> q, bool penalize_length) {
  const std::size_t n = std::min(p.size(), q.size());
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) d += !(p[i] == q[i]);
  if (penalize_length) d += std::max(p.size(), q.size()) - n;
  return d;
}

template <typename T>
std::size_t levenshtein_raw(std::span<const T> p, std::span<const T> q) {
  if (p.size() < q.size()) std::swap(p, q);
  std::vector<std::size_t> row(q.size() + 1);
  for (std::size_t j = 0; j <= q.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= q.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (p[i - 1] == q[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[q.size()];
}

// Global alignment score with match +1, mismatch -1, gap 0.
template <typename T>
long needleman_wunsch_score(std::span<const T> p, std::span<const T> q) {
  std::vector<long> row(q.size() + 1, 0);
  for (std::size_t i = 1; i <= p.size(); ++i) {
    long diag = row[0];
    for (std::size_t j = 1; j <= q.size(); ++j) {
      const long up = row[j];
      row[j] = std::max({up, row[j - 1], diag + (p[i - 1] == q[j - 1] ? 1 : -1)});
      diag = up;
    }
  }
  return row[q.size()];
}

template <typename T>
std::size_t lcs_length(std::span<const T> p, std::span<const T> q) {
  if (p.size() < q.size()) std::swap(p, q);
  std::vector<std::size_t> row(q.size() + 1, 0);
  for (std::size_t i = 1; i <= p.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= q.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = p[i - 1] == q[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[q.size()];
}

template <typename T>
PathDistance delta_hamming(std::span<const T> p, std::span<const T> q, bool penalize_length = true) {
  return detail::make_distance(hamming_raw(p, q, penalize_length), p.size(), q.size());
}

template <typename T>
PathDistance delta_levenshtein(std::span<const T> p, std::span<const T> q) {
  return detail::make_distance(levenshtein_raw(p, q), p.size(), q.size());
}

template <typename T>
PathDistance delta_needleman_wunsch(std::span<const T> p, std::span<const T> q) {
  const long score = needleman_wunsch_score(p, q);
  const long raw = std::max(static_cast<long>(p.size()) - score, static_cast<long>(q.size()) - score);
  return detail::make_distance(static_cast<std::size_t>(raw), p.size(), q.size());
}

template <typename T>
PathDistance delta_lcs(std::span<const T> p, std::span<const T> q) {
  const std::size_t z = lcs_length(p, q);
  return detail::make_distance(std::max(p.size(), q.size()) - z, p.size(), q.size());
}

struct LcsContext {
  bool both_single_path = false;
};

constexpr std::size_t kLargeGapMinLength = 10;

// LCS distance plus the large-gap rules, judged on the unique-node count of
// the smaller path. The rules only fire on paths that are not already equal.
template <typename T>
PathDistance delta_lcs_modified(std::span<const T> p, std::span<const T> q, LcsContext ctx = {}) {
  const std::size_t z = lcs_length(p, q);
  PathDistance d = detail::make_distance(std::max(p.size(), q.size()) - z, p.size(), q.size());
  const std::size_t small = std::min(p.size(), q.size());
  if (d.raw == 0 || small < kLargeGapMinLength) return d;
  const double unique = static_cast<double>(small - z);
  if ((ctx.both_single_path && unique < 0.3 * static_cast<double>(small)) ||
      unique < 0.1 * static_cast<double>(small)) {
    d.forced_clone = true;
  }
  return d;
}

template <typename Seq>
PathDistance delta_hamming(const Seq& p, const Seq& q, bool penalize_length = true) {
  return delta_hamming(as_span(p), as_span(q), penalize_length);
}
template <typename Seq>
PathDistance delta_levenshtein(const Seq& p, const Seq& q) {
  return delta_levenshtein(as_span(p), as_span(q));
}
template <typename Seq>
PathDistance delta_needleman_wunsch(const Seq& p, const Seq& q) {
  return delta_needleman_wunsch(as_span(p), as_span(q));
}
template <typename Seq>
PathDistance delta_lcs(const Seq& p, const Seq& q) {
  return delta_lcs(as_span(p), as_span(q));
}
template <typename Seq>
PathDistance delta_lcs_modified(const Seq& p, const Seq& q, LcsContext ctx = {}) {
  return delta_lcs_modified(as_span(p), as_span(q), ctx);
}

template <typename T>
PathDistance path_distance(Metric m, std::span<const T> p, std::span<const T> q, LcsContext ctx = {}) {
  if (p.empty() || q.empty()) throw std::invalid_argument("path distance of an empty path");
  switch (m) {
    case Metric::hamming: return delta_hamming(p, q, true);
    case Metric::hamming_nopenalty: return delta_hamming(p, q, false);
    case Metric::levenshtein: return delta_levenshtein(p, q);
    case Metric::needleman_wunsch: return delta_needleman_wunsch(p, q);
    case Metric::lcs: return delta_lcs(p, q);
    case Metric::lcs_modified: return delta_lcs_modified(p, q, ctx);
  }
  throw std::invalid_argument("unknown metric");
}

template <typename Seq>
PathDistance path_distance(Metric m, const Seq& p, const Seq& q, LcsContext ctx = {}) {
  return path_distance(m, as_span(p), as_span(q), ctx);
}

}  // namespace domclone
