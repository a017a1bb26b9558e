#pragma once

// Oracle and axiom sweeps over the path metrics, shared by the unit tests and
// the acceptance binary. Each returns the number of disagreements found.

#include <algorithm>
#include <array>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "domclone/metrics.hpp"
#include "oracles.hpp"

namespace suites {

struct Mismatches {
  std::size_t checked = 0;
  std::size_t levenshtein = 0;
  std::size_t needleman_wunsch = 0;
  std::size_t lcs = 0;

  std::size_t total() const { return levenshtein + needleman_wunsch + lcs; }
};

namespace detail {

// Pairs that are equal up to renaming symbols have equal scores, so only the
// pair whose symbols first appear in the order 0, 1, 2 needs checking.
inline bool canonical(const std::vector<int>& p, const std::vector<int>& q) {
  int next = 0;
  std::array<int, 8> seen{};
  seen.fill(-1);
  for (const auto* s : {&p, &q}) {
    for (int x : *s) {
      if (seen[x] < 0) {
        if (x != next) return false;
        seen[x] = next++;
      }
    }
  }
  return true;
}

inline void compare(Mismatches& m, const std::vector<int>& p, const std::vector<int>& q, bool exhaustive) {
  using domclone::as_span;
  ++m.checked;
  std::size_t lev;
  long nw;
  std::size_t lcs;
  if (exhaustive) {
    lev = oracle::edit_distance_naive(p.data(), p.size(), q.data(), q.size());
    nw = oracle::alignment_score_naive(p.data(), p.size(), q.data(), q.size());
    lcs = oracle::lcs_by_enumeration(p, q);
  } else {
    oracle::MemoOracle<int> o(p, q);
    lev = o.edit_distance();
    nw = o.alignment_score();
    lcs = o.lcs();
  }
  m.levenshtein += domclone::levenshtein_raw(as_span(p), as_span(q)) != lev;
  m.needleman_wunsch += domclone::needleman_wunsch_score(as_span(p), as_span(q)) != nw;
  m.lcs += domclone::lcs_length(as_span(p), as_span(q)) != lcs;
}

}  // namespace detail

// Every pair of sequences of length 1..max_len over a 3-symbol alphabet.
inline Mismatches exhaustive_oracles(std::size_t max_len = 6) {
  Mismatches m;
  const auto seqs = oracle::all_sequences(3, max_len);
  for (const auto& p : seqs) {
    for (const auto& q : seqs) {
      if (detail::canonical(p, q)) detail::compare(m, p, q, true);
    }
  }
  return m;
}

inline Mismatches random_oracles(std::size_t trials = 10000, std::size_t max_len = 20, std::uint64_t seed = 1) {
  Mismatches m;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const int alphabet = 2 + static_cast<int>(t % 4);
    auto p = oracle::random_sequence(rng, 1, max_len, alphabet);
    auto q = oracle::random_sequence(rng, 1, max_len, alphabet);
    detail::compare(m, p, q, false);
  }
  return m;
}

struct AxiomViolations {
  std::size_t identity = 0;
  std::size_t symmetry = 0;
  std::size_t triangle = 0;
  std::size_t monotone = 0;
  std::size_t range = 0;

  std::size_t total() const { return identity + symmetry + triangle + monotone + range; }
};

constexpr domclone::Metric kAllMetrics[] = {domclone::Metric::hamming,         domclone::Metric::hamming_nopenalty,
                                            domclone::Metric::levenshtein,     domclone::Metric::needleman_wunsch,
                                            domclone::Metric::lcs,             domclone::Metric::lcs_modified};

inline AxiomViolations metric_axioms(std::size_t trials = 10000, std::uint64_t seed = 2) {
  using domclone::path_distance;
  AxiomViolations v;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const int alphabet = 2 + static_cast<int>(t % 3);
    auto p = oracle::random_sequence(rng, 1, 14, alphabet);
    auto q = oracle::random_sequence(rng, 1, 14, alphabet);
    for (auto metric : kAllMetrics) {
      const auto pq = path_distance(metric, p, q);
      const auto qp = path_distance(metric, q, p);
      v.identity += path_distance(metric, p, p).raw != 0;
      v.symmetry += pq.raw != qp.raw || pq.normalized != qp.normalized || pq.forced_clone != qp.forced_clone;
      v.range += !(pq.normalized >= 0.0 && pq.normalized <= 1.0) || ((pq.raw == 0) != (pq.normalized == 0.0));
      if (metric != domclone::Metric::hamming_nopenalty) v.identity += (pq.raw == 0) != (p == q);
    }
    const auto lcs = domclone::delta_lcs(p, q).raw;
    const auto lev = domclone::delta_levenshtein(p, q).raw;
    const auto ham = domclone::delta_hamming(p, q, true).raw;
    v.monotone += !(lcs <= lev && lev <= ham);

    // Triangle inequality on short sequences.
    auto a = oracle::random_sequence(rng, 1, 6, 3);
    auto b = oracle::random_sequence(rng, 1, 6, 3);
    auto c = oracle::random_sequence(rng, 1, 6, 3);
    auto lv = [](const auto& x, const auto& y) { return domclone::delta_levenshtein(x, y).raw; };
    v.triangle += lv(a, c) > lv(a, b) + lv(b, c);
    const std::size_t n = b.size();
    a.resize(n, 0);
    c.resize(n, 1);
    auto hm = [](const auto& x, const auto& y) { return domclone::delta_hamming(x, y, true).raw; };
    v.triangle += hm(a, c) > hm(a, b) + hm(b, c);
  }
  return v;
}

}  // namespace suites
