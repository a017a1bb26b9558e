#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "domclone/descset.hpp"
#include "domclone/metrics.hpp"
#include "domclone/types.hpp"

namespace domclone {

struct MatchConfig {
  double tau = 0.3;
  int min_clone_lines = 15;
  Metric metric = Metric::lcs;
  double max_set_factor = 1.7;
  int max_path_length_diff = 7;
  bool prefilter = true;
  bool copy_strategy = true;
  unsigned threads = 1;

  void validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
    if (min_clone_lines < 0) throw std::invalid_argument("min_clone_lines must be non-negative");
    if (!(max_set_factor >= 1.0)) throw std::invalid_argument("max_set_factor must be at least 1");
    if (max_path_length_diff < 0) throw std::invalid_argument("max_path_length_diff must be non-negative");
    if (threads == 0) throw std::invalid_argument("threads must be positive");
  }
};

enum class CloneKind { strict, partial };

inline const char* kind_name(CloneKind k) { return k == CloneKind::strict ? "strict" : "partial"; }

struct ClonePair {
  CodeFragment left;
  CodeFragment right;
  double delta = 0.0;
  CloneKind kind = CloneKind::strict;
  bool forced = false;

  friend bool operator<(const ClonePair& a, const ClonePair& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  }
  friend bool operator==(const ClonePair& a, const ClonePair& b) {
    return a.left == b.left && a.right == b.right && a.delta == b.delta && a.kind == b.kind &&
           a.forced == b.forced;
  }
};

// Fingerprint set with every fingerprint replaced by a dense corpus-wide id.
using IdSet = PathSet<std::uint32_t>;

// Interns fingerprints (any totally ordered label) into dense ids.
template <typename Label>
class FingerprintInterner {
 public:
  std::uint32_t id(const Label& l) {
    auto [it, inserted] = ids_.try_emplace(l, static_cast<std::uint32_t>(ids_.size()));
    return it->second;
  }

  IdSet intern(const PathSet<Label>& s) {
    IdSet out;
    out.fragment = s.fragment;
    out.multiplicity = s.multiplicity;
    out.original_count = s.original_count;
    for (const auto& p : s.paths) {
      std::vector<std::uint32_t> ids;
      ids.reserve(p.size());
      for (const auto& l : p) ids.push_back(id(l));
      out.paths.push_back(std::move(ids));
    }
    return out;
  }

 private:
  std::map<Label, std::uint32_t> ids_;
};

struct SetDelta {
  double delta = 0.0;
  bool forced = false;    // some path minimum came from a large-gap rule
  bool bypass = false;    // every path minimum is zero and at least one was forced
  bool complete = true;   // false when the computation stopped early
};

namespace detail {

// Path distances are summed in fixed point so the mean does not depend on
// path order or on how duplicate paths were merged.
constexpr double kUnit = 1099511627776.0;  // 2^40

inline std::int64_t to_units(const PathDistance& d) {
  return d.forced_clone ? 0 : static_cast<std::int64_t>(std::llround(d.normalized * kUnit));
}

// Canonical content of a set: sorted (path, multiplicity) entries. Equal
// content means every comparison against a third set gives equal results.
inline std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> content_key(const IdSet& s) {
  std::map<std::vector<std::uint32_t>, std::uint32_t> m;
  for (std::size_t i = 0; i < s.paths.size(); ++i) m[s.paths[i]] += s.multiplicity[i];
  return {m.begin(), m.end()};
}

using ContentKey = decltype(content_key(std::declval<const IdSet&>()));

// True when `a` plays the smaller set against `b`.
inline bool goes_first(const IdSet& a, const ContentKey& ka, const IdSet& b, const ContentKey& kb) {
  if (a.original_count != b.original_count) return a.original_count < b.original_count;
  return !(kb < ka);
}

inline SetDelta oriented_delta(const IdSet& small, const IdSet& large, Metric metric, double stop_at) {
  const LcsContext ctx{small.original_count == 1 && large.original_count == 1};
  const double denom = kUnit * static_cast<double>(small.weight());
  SetDelta out;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < small.paths.size(); ++i) {
    const auto p = as_span(small.paths[i]);
    std::int64_t best = INT64_MAX;
    bool best_forced = false;
    for (const auto& qv : large.paths) {
      const PathDistance d = path_distance(metric, p, as_span(qv), ctx);
      const std::int64_t u = to_units(d);
      if (u < best || (u == best && !d.forced_clone)) {
        best = u;
        best_forced = d.forced_clone;
      }
      if (best == 0 && !best_forced) break;
    }
    out.forced = out.forced || best_forced;
    total += best * small.multiplicity[i];
    out.delta = static_cast<double>(total) / denom;
    if (stop_at >= 0.0 && total > 0 && out.delta >= stop_at) {
      out.complete = false;
      return out;
    }
  }
  out.bypass = out.forced && total == 0;
  return out;
}

}  // namespace detail

// Mean over the smaller set's paths of the minimum normalized distance to any
// path of the larger set, weighted by multiplicity. Sets are ordered by their
// unmerged path count, ties by content, so Δ(a, b) = Δ(b, a). With
// stop_at >= 0 the computation ends once Δ >= stop_at is certain.
inline SetDelta set_delta(const IdSet& a, const IdSet& b, Metric metric, double stop_at = -1.0) {
  if (a.paths.empty() || b.paths.empty()) throw std::invalid_argument("set distance of an empty set");
  return detail::goes_first(a, detail::content_key(a), b, detail::content_key(b))
             ? detail::oriented_delta(a, b, metric, stop_at)
             : detail::oriented_delta(b, a, metric, stop_at);
}

enum class PrefilterDecision { compare, skip };

namespace detail {

inline std::vector<std::size_t> distinct_lengths(const IdSet& s) {
  std::vector<std::size_t> out;
  for (const auto& p : s.paths) out.push_back(p.size());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool lengths_compatible(const std::vector<std::size_t>& small, const std::vector<std::size_t>& large,
                               std::size_t max_diff) {
  for (std::size_t len : small) {
    auto it = std::lower_bound(large.begin(), large.end(), len > max_diff ? len - max_diff : 0);
    if (it == large.end() || *it > len + max_diff) return false;
  }
  return true;
}

inline bool prefilter_skip(const IdSet& a, const std::vector<std::size_t>& la, const IdSet& b,
                           const std::vector<std::size_t>& lb, const MatchConfig& cfg) {
  const auto na = static_cast<double>(a.original_count);
  const auto nb = static_cast<double>(b.original_count);
  if (std::max(na, nb) > cfg.max_set_factor * std::min(na, nb)) return true;
  const auto diff = static_cast<std::size_t>(cfg.max_path_length_diff);
  const bool a_small = a.original_count <= b.original_count;
  if (!lengths_compatible(a_small ? la : lb, a_small ? lb : la, diff)) return true;
  // Equal counts: the orientation is decided by content, so check both ways.
  return a.original_count == b.original_count && !lengths_compatible(a_small ? lb : la, a_small ? la : lb, diff);
}

}  // namespace detail

inline PrefilterDecision prefilter(const IdSet& a, const IdSet& b, const MatchConfig& cfg) {
  return detail::prefilter_skip(a, detail::distinct_lengths(a), b, detail::distinct_lengths(b), cfg)
             ? PrefilterDecision::skip
             : PrefilterDecision::compare;
}

inline CloneKind classify(const IdSet& a, const IdSet& b) {
  return a.original_count == b.original_count ? CloneKind::strict : CloneKind::partial;
}

inline ClonePair make_pair(const IdSet& a, const IdSet& b, const SetDelta& d) {
  ClonePair p{a.fragment, b.fragment, d.delta, classify(a, b), d.forced};
  if (p.right < p.left) std::swap(p.left, p.right);
  return p;
}

// All-pairs matching. Fragments below min_clone_lines are ignored. With the
// copy strategy, fragments of identical content are compared once through a
// representative and the outcome is copied to every member; the output equals
// the exhaustive run.
inline std::vector<ClonePair> match_corpus(const std::vector<IdSet>& sets, const MatchConfig& cfg) {
  cfg.validate();
  std::vector<const IdSet*> live;
  for (const auto& s : sets) {
    if (s.paths.empty()) continue;
    if (s.fragment.source_line_count >= cfg.min_clone_lines) live.push_back(&s);
  }

  // groups[g] lists members; the first is the representative.
  std::vector<std::vector<const IdSet*>> groups;
  std::vector<detail::ContentKey> keys;
  std::map<std::pair<std::size_t, detail::ContentKey>, std::size_t> by_content;
  for (const IdSet* s : live) {
    auto key = detail::content_key(*s);
    if (cfg.copy_strategy) {
      auto [it, inserted] = by_content.try_emplace({s->original_count, key}, groups.size());
      if (!inserted) {
        groups[it->second].push_back(s);
        continue;
      }
    }
    groups.push_back({s});
    keys.push_back(std::move(key));
  }

  std::vector<std::vector<std::size_t>> lengths(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) lengths[g] = detail::distinct_lengths(*groups[g].front());

  auto emit_members = [&](std::vector<ClonePair>& out, std::size_t gi, std::size_t gj, const SetDelta& d) {
    for (const IdSet* x : groups[gi]) {
      for (const IdSet* y : groups[gj]) out.push_back(make_pair(*x, *y, d));
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(groups.size())));
  std::vector<std::vector<ClonePair>> results(workers);
  std::atomic<std::size_t> next{0};
  auto work = [&](unsigned w) {
    auto& out = results[w];
    for (std::size_t i; (i = next.fetch_add(1)) < groups.size();) {
      const IdSet& a = *groups[i].front();
      if (0.0 < cfg.tau) {
        const SetDelta zero{};
        for (std::size_t x = 0; x < groups[i].size(); ++x) {
          for (std::size_t y = x + 1; y < groups[i].size(); ++y) {
            out.push_back(make_pair(*groups[i][x], *groups[i][y], zero));
          }
        }
      }
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const IdSet& b = *groups[j].front();
        if (cfg.prefilter && detail::prefilter_skip(a, lengths[i], b, lengths[j], cfg)) continue;
        const SetDelta d = detail::goes_first(a, keys[i], b, keys[j])
                               ? detail::oriented_delta(a, b, cfg.metric, cfg.tau)
                               : detail::oriented_delta(b, a, cfg.metric, cfg.tau);
        if (d.complete && (d.delta < cfg.tau || d.bypass)) emit_members(out, i, j, d);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::vector<ClonePair> all;
  for (auto& r : results) all.insert(all.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace domclone
