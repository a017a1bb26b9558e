#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "domclone/descset.hpp"
#include "domclone/frontend.hpp"
#include "domclone/matcher.hpp"
#include "oracles.hpp"

using namespace domclone;

namespace {

AbstractInstruction I(std::vector<std::string> toks) { return AbstractInstruction{std::move(toks)}; }

Path path_of(const std::string& text) {
  Path p;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find("->", pos);
    p.push_back(parse_instruction(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 2;
  }
  return p;
}

DescriptionSet zipdir_set() {
  auto fa = analyze_source(read_text_file(std::string(DOMCLONE_TEST_DATA) + "/zipdir_lower.java"),
                           "zipdir_lower.java", 15);
  ConstantPool pool;
  return extract_description_set(abstract_tree(fa.methods.at(0).raw_tree, pool, true), fa.methods[0].fragment);
}

DominatorTree<int> random_tree(std::mt19937_64& rng, std::size_t n) {
  DominatorTree<int> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.nodes.push_back(static_cast<int>(rng() % 3));
    if (i == 0) {
      t.parent.push_back(std::nullopt);
    } else {
      t.parent.push_back(static_cast<NodeId>(rng() % i));
    }
  }
  return t;
}

DescriptionSet random_dset(std::mt19937_64& rng) {
  DescriptionSet d;
  const std::size_t n = 1 + rng() % 6;
  for (std::size_t i = 0; i < n; ++i) {
    Path p;
    const std::size_t len = 1 + rng() % 4;
    for (std::size_t k = 0; k < len; ++k) p.push_back(I({"T" + std::to_string(rng() % 3)}));
    d.paths.push_back(p);
  }
  // Duplicate a few paths so identical merging has work to do.
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 2) d.paths.push_back(d.paths[i]);
  }
  d.multiplicity.assign(d.paths.size(), 1);
  d.original_count = d.paths.size();
  return d;
}

}  // namespace

TEST(ExtractDescriptionSet, SingleNodeTree) {
  DominatorTree<int> t{{7}, {std::nullopt}, 0};
  auto s = extract_paths(t);
  ASSERT_EQ(s.paths.size(), 1u);
  EXPECT_EQ(s.paths[0], std::vector<int>{7});
  EXPECT_EQ(s.original_count, 1u);
}

TEST(ExtractDescriptionSet, ZipDirMatchesReference) {
  const std::vector<std::string> expected = {
      "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]->[COND, LT, V, FIELDREAD]->"
      "[=, V, NEW, #1, V, V]->[COND, CALL, #2]->[CALL, #3, V, V, L]",
      "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]->[COND, LT, V, FIELDREAD]->"
      "[=, V, NEW, #1, V, V]->[COND, CALL, #2]->[=, V, NEW, #4, V]->[=, V, NEW, #5]->"
      "[CALL, #6, V]->[COND, NE, =, V, CALL, #7, V, NEG, V]->[CALL, #8, V, V, V]",
      "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]->[COND, LT, V, FIELDREAD]->"
      "[=, V, NEW, #1, V, V]->[COND, CALL, #2]->[=, V, NEW, #4, V]->[=, V, NEW, #5]->"
      "[CALL, #6, V]->[COND, NE, =, V, CALL, #7, V, NEG, V]->[CALL, #9]",
      "[=, V, CALL, #0]->[=, V, NEWARRAY, byte]->[=, V, L]->[=, V, L]->[COND, LT, V, FIELDREAD]->"
      "[=, V, NEW, #1, V, V]->[COND, CALL, #2]->[POSTINC, V]",
  };
  auto d = zipdir_set();
  ASSERT_EQ(d.paths.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(serialize_path(d.paths[i]), expected[i]) << "path " << i;
    EXPECT_EQ(d.paths[i], path_of(expected[i]));
  }
  EXPECT_EQ(dump_description_set(d), expected[0] + "\n" + expected[1] + "\n" + expected[2] + "\n" + expected[3] + "\n");
}

TEST(ExtractDescriptionSet, CompleteBinaryTree) {
  for (int depth = 0; depth <= 6; ++depth) {
    DominatorTree<int> t;
    const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
    for (std::size_t i = 0; i < n; ++i) {
      t.nodes.push_back(static_cast<int>(i));
      t.parent.push_back(i == 0 ? std::nullopt : std::optional<NodeId>((i - 1) / 2));
    }
    auto s = extract_paths(t);
    ASSERT_EQ(s.paths.size(), std::size_t{1} << depth);
    for (const auto& p : s.paths) EXPECT_EQ(p.size(), static_cast<std::size_t>(depth + 1));
  }
}

TEST(ExtractDescriptionSet, PathsFollowParentLinksToLeaves) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto t = random_tree(rng, 1 + rng() % 20);
    auto s = extract_paths(t.relabel([](int) { return 0; }));
    const auto leaves = t.leaves();
    ASSERT_EQ(s.paths.size(), leaves.size());
    // Independent reconstruction: walk each leaf up to the root.
    std::multiset<std::size_t> expected_lengths, got_lengths;
    for (NodeId leaf : leaves) {
      std::size_t len = 1;
      for (NodeId n = leaf; t.parent[n]; n = *t.parent[n]) ++len;
      expected_lengths.insert(len);
    }
    for (const auto& p : s.paths) got_lengths.insert(p.size());
    EXPECT_EQ(got_lengths, expected_lengths);
  }
}

TEST(MergePaths, IdenticalPathsCollapse) {
  DescriptionSet d;
  Path p{I({"=", "V", "L"}), I({"CALL", "#0"})};
  d.paths = {p, p};
  d.multiplicity = {1, 1};
  d.original_count = 2;
  auto m = merge_paths(d, MergeMode::identical);
  ASSERT_EQ(m.paths.size(), 1u);
  EXPECT_EQ(m.multiplicity, std::vector<std::uint32_t>{2});
  EXPECT_EQ(m.original_count, 2u);
  EXPECT_EQ(merge_paths(d, MergeMode::none).paths.size(), 2u);
}

TEST(MergePaths, OneNodeDifferenceCollapsesToSmaller) {
  DescriptionSet d;
  d.paths = {path_of("[=, V, L]->[=, V, L]"), path_of("[=, V, L]->[=, V, V]")};
  d.multiplicity = {1, 1};
  d.original_count = 2;
  auto m = merge_paths(d, MergeMode::near);
  ASSERT_EQ(m.paths.size(), 1u);
  EXPECT_EQ(m.multiplicity, std::vector<std::uint32_t>{2});
  // "[=, V, L]" < "[=, V, V]" as serialized text.
  EXPECT_EQ(serialize_path(m.paths[0]), "[=, V, L]->[=, V, L]");
  EXPECT_EQ(merge_paths(d, MergeMode::identical).paths.size(), 2u);
}

TEST(MergePaths, NearMergeLeavesNoOneNodeNeighbours) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto d = random_dset(rng);
    auto m = merge_paths(d, MergeMode::near);
    EXPECT_EQ(m.weight(), d.weight());
    for (std::size_t i = 0; i < m.paths.size(); ++i) {
      for (std::size_t j = i + 1; j < m.paths.size(); ++j) {
        EXPECT_NE(m.paths[i], m.paths[j]);
        if (m.paths[i].size() != m.paths[j].size()) continue;
        std::size_t diff = 0;
        for (std::size_t k = 0; k < m.paths[i].size(); ++k) diff += !(m.paths[i][k] == m.paths[j][k]);
        EXPECT_NE(diff, 1u);
      }
    }
  }
}

TEST(MergePaths, DifferentLengthsNeverMerge) {
  // Every pair of paths over a 2-symbol alphabet with distinct lengths <= 5.
  const auto seqs = oracle::all_sequences(2, 5);
  auto to_path = [](const std::vector<int>& s) {
    Path p;
    for (int x : s) p.push_back(I({x ? "V" : "L"}));
    return p;
  };
  std::size_t checked = 0;
  for (const auto& a : seqs) {
    for (const auto& b : seqs) {
      if (a.size() == b.size()) continue;
      DescriptionSet d;
      d.paths = {to_path(a), to_path(b)};
      d.multiplicity = {1, 1};
      d.original_count = 2;
      for (auto mode : {MergeMode::identical, MergeMode::near}) {
        auto m = merge_paths(d, mode);
        ASSERT_EQ(m.paths, d.paths);
        ASSERT_EQ(m.multiplicity, d.multiplicity);
      }
      ++checked;
    }
  }
  EXPECT_EQ(checked, 62u * 62u - (4u + 16u + 64u + 256u + 1024u));
}

TEST(MergePaths, SelfDistanceStaysZero) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto d = random_dset(rng);
    for (auto mode : {MergeMode::none, MergeMode::identical, MergeMode::near}) {
      FingerprintInterner<AbstractInstruction> ids;
      auto s = ids.intern(merge_paths(d, mode));
      for (auto metric : {Metric::hamming, Metric::levenshtein, Metric::lcs, Metric::lcs_modified}) {
        EXPECT_EQ(set_delta(s, s, metric).delta, 0.0);
      }
    }
  }
}

TEST(MergePaths, IdenticalMergeKeepsDelta) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_dset(rng);
    auto b = random_dset(rng);
    FingerprintInterner<AbstractInstruction> ids;
    auto ua = ids.intern(a), ub = ids.intern(b);
    auto ma = ids.intern(merge_paths(a, MergeMode::identical));
    auto mb = ids.intern(merge_paths(b, MergeMode::identical));
    for (auto metric : {Metric::hamming, Metric::needleman_wunsch, Metric::lcs}) {
      EXPECT_EQ(set_delta(ua, ub, metric).delta, set_delta(ma, mb, metric).delta);
    }
  }
}

TEST(Serialize, CanonicalRenderingAndRoundTrip) {
  EXPECT_EQ(serialize_instruction(I({"=", "V", "L"})), "[=, V, L]");
  EXPECT_EQ(serialize_instruction(I({"CALL", "#6", "V"})), "[CALL, #6, V]");
  const auto x = I({"POSTINC", "V"});
  EXPECT_EQ(parse_instruction(serialize_instruction(x)), x);
  EXPECT_THROW(parse_instruction("=, V"), std::invalid_argument);
  EXPECT_THROW(parse_instruction("[]"), std::invalid_argument);
}

TEST(Serialize, InjectiveOnAlphabet) {
  const std::vector<std::string> alphabet = {"=", "V", "L", "CALL", "#0", "#12", "COND", "LT", "NEG",
                                             "byte", "FIELDREAD", "+", "NEWARRAY", "POSTINC"};
  std::mt19937_64 rng(3);
  std::set<std::vector<std::string>> lists;
  std::set<std::string> strings;
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<std::string> toks(1 + rng() % 6);
    for (auto& t : toks) t = alphabet[rng() % alphabet.size()];
    const auto s = serialize_instruction(I(toks));
    if (lists.insert(toks).second) {
      EXPECT_TRUE(strings.insert(s).second) << s;
    }
    EXPECT_EQ(parse_instruction(s).tokens, toks);
  }
  EXPECT_EQ(lists.size(), strings.size());
}
