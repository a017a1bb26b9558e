#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "domclone/fingerprint.hpp"
#include "domclone/frontend.hpp"

using namespace domclone;

namespace {

AbstractInstruction I(std::vector<std::string> toks) { return AbstractInstruction{std::move(toks)}; }

DescriptionSet zipdir_set() {
  auto fa = analyze_source(read_text_file(std::string(DOMCLONE_TEST_DATA) + "/zipdir_lower.java"),
                           "zipdir_lower.java", 15);
  ConstantPool pool;
  return extract_description_set(abstract_tree(fa.methods.at(0).raw_tree, pool, true), fa.methods[0].fragment);
}

std::vector<AbstractInstruction> distinct_instructions(const DescriptionSet& d) {
  std::set<AbstractInstruction> seen;
  std::vector<AbstractInstruction> out;
  for (const auto& p : d.paths) {
    for (const auto& i : p) {
      if (seen.insert(i).second) out.push_back(i);
    }
  }
  return out;
}

std::vector<std::string> hexes(const std::vector<Fingerprint>& path) {
  std::vector<std::string> out;
  for (const auto& f : path) out.push_back(f.hex());
  return out;
}

}  // namespace

TEST(Md5, ReferenceDigests) {
  EXPECT_EQ(md5_fingerprint("[=, V, CALL, #0]").hex(), "35d37480aba8b098914b104b822d27af");
  EXPECT_EQ(md5_fingerprint("[=, V, L]").hex(), "c0812f2a5a758d7f6572a0f8fc057ce3");
  EXPECT_EQ(md5_fingerprint("[POSTINC, V]").hex(), "fc6ebb514a9a13b92cff0ae97894c23e");
  EXPECT_EQ(md5_fingerprint("[CALL, #9]").hex(), "f13c29192ec234b0a51eb4f32bc85efe");
  EXPECT_EQ(md5_fingerprint("[=, V, NEW, #4, V]").hex(), "055bfda33fe11d9fb52471e283c27d9c");
  // The other reference digest for this node is of a variant with two spaces.
  EXPECT_EQ(md5_fingerprint("[=, V, NEW,  #4, V]").hex(), "c21875dc52243cb4f19c52d3e02be40a");
  EXPECT_EQ(md5_fingerprint("").hex(), "d41d8cd98f00b204e9800998ecf8427e");
}

TEST(Md5, ZipDirFirstAndLastPaths) {
  auto fs = fingerprint_md5(zipdir_set());
  ASSERT_EQ(fs.paths.size(), 4u);
  const std::vector<std::string> prefix = {
      "35d37480aba8b098914b104b822d27af", "d352f27168825f06297c0968af4006cc", "c0812f2a5a758d7f6572a0f8fc057ce3",
      "c0812f2a5a758d7f6572a0f8fc057ce3", "20ae2bed041f26248c27148484197862", "71bd8588d1df5ed91c8d27fb91a55d46",
      "a45688ae3fc84165d19f2efe859e43db"};
  auto first = prefix;
  first.push_back("c088b1671e63a009662f8e31c773a0a0");
  auto last = prefix;
  last.push_back("fc6ebb514a9a13b92cff0ae97894c23e");
  EXPECT_EQ(hexes(fs.paths[0]), first);
  EXPECT_EQ(hexes(fs.paths[3]), last);
  EXPECT_EQ(fs.paths[0][2], fs.paths[0][3]);
  // The middle paths agree with the reference wherever its entries are consistent.
  EXPECT_EQ(fs.paths[2][7].hex(), "055bfda33fe11d9fb52471e283c27d9c");
  EXPECT_EQ(fs.paths[2][8].hex(), "19b4a2a27bfa0ccbeeee5564571ec011");
  EXPECT_EQ(fs.paths[1].back().hex(), "c15ffb85b338cca72f6729adcc304469");
  EXPECT_EQ(fs.paths[2].back().hex(), "f13c29192ec234b0a51eb4f32bc85efe");
}

TEST(Md5, EqualInstructionsAcrossPaths) {
  auto fs = fingerprint_md5(zipdir_set());
  for (const auto& p : fs.paths) EXPECT_EQ(p[0], fs.paths[0][0]);
  EXPECT_EQ(fs.paths[1][7], fs.paths[2][7]);
}

TEST(Prime4, KnownValuesAndNoCollisionsOnZipDir) {
  EXPECT_EQ(prime_hash(""), 0u);
  EXPECT_EQ(prime_hash("ab"), 97u * 31u + 98u);
  EXPECT_EQ(prime4_fingerprint("ab").hex(), "00000c21");
  const auto vocab = distinct_instructions(zipdir_set());
  EXPECT_EQ(vocab.size(), 14u);
  std::set<std::string> values;
  for (const auto& i : vocab) values.insert(prime4_fingerprint(serialize_instruction(i)).bytes);
  EXPECT_EQ(values.size(), vocab.size());
  for (const auto& v : values) EXPECT_EQ(v.size(), 4u);
}

TEST(Fingerprints, ShapeIsPreserved) {
  const auto d = zipdir_set();
  const auto index = build_lsh_index(distinct_instructions(d), 1);
  for (auto scheme : {HashScheme::none, HashScheme::prime4, HashScheme::md5, HashScheme::lsh}) {
    auto fs = fingerprint_set(d, scheme, &index);
    ASSERT_EQ(fs.paths.size(), d.paths.size());
    for (std::size_t i = 0; i < d.paths.size(); ++i) EXPECT_EQ(fs.paths[i].size(), d.paths[i].size());
    EXPECT_EQ(fs.multiplicity, d.multiplicity);
    EXPECT_EQ(fs.original_count, d.original_count);
    // Equal instructions give equal fingerprints, unequal ones unequal except under LSH.
    for (std::size_t i = 0; i < d.paths.size(); ++i) {
      for (std::size_t k = 0; k < d.paths[i].size(); ++k) {
        for (std::size_t j = 0; j < d.paths.size(); ++j) {
          for (std::size_t l = 0; l < d.paths[j].size(); ++l) {
            const bool same = d.paths[i][k] == d.paths[j][l];
            if (same) {
              EXPECT_EQ(fs.paths[i][k], fs.paths[j][l]);
            } else if (scheme != HashScheme::lsh) {
              EXPECT_NE(fs.paths[i][k], fs.paths[j][l]);
            }
          }
        }
      }
    }
  }
  EXPECT_EQ(fingerprint_set(d, HashScheme::none).paths[0][2].bytes, "[=, V, L]");
}

TEST(Lsh, LengthClusters) {
  EXPECT_EQ(LshIndex::cluster_of(1), 3);
  EXPECT_EQ(LshIndex::cluster_of(2), 3);
  EXPECT_EQ(LshIndex::cluster_of(5), 5);
  EXPECT_EQ(LshIndex::cluster_of(8), 8);
  EXPECT_EQ(LshIndex::cluster_of(11), 8);
  const auto two = I({"POSTINC", "V"});
  const auto eleven = I({"COND", "NE", "=", "V", "CALL", "#7", "V", "NEG", "V", "V", "V"});
  auto index = build_lsh_index({two, eleven}, 42);
  EXPECT_EQ(index.at(serialize_instruction(two)).cluster, 3);
  EXPECT_EQ(index.at(serialize_instruction(eleven)).cluster, 8);
  for (const auto& [key, b] : index.assignment) EXPECT_LT(b.bucket, LshIndex::kBuckets);
}

TEST(Lsh, SimilarAssignmentsShareBuckets) {
  const auto minus = I({"=", "V", "-", "V", "V"});
  const auto plus = I({"=", "V", "+", "V", "V"});
  const auto lit = I({"=", "V", "-", "L", "V"});
  const auto other = I({"CALL", "#3", "V", "V", "L"});
  int together = 0, operand = 0, unrelated = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto index = build_lsh_index({minus, plus, lit, other}, seed);
    auto fp = [&](const AbstractInstruction& i) { return lsh_fingerprint(index, serialize_instruction(i)); };
    together += fp(minus) == fp(plus);
    operand += fp(minus) == fp(lit);
    unrelated += fp(minus) == fp(other);
  }
  EXPECT_GE(together, 90);
  EXPECT_GE(operand, 90);
  EXPECT_LE(unrelated, 10);
}

TEST(Lsh, EqualStringsNeverSplit) {
  const auto a = I({"=", "V", "L"});
  auto index = build_lsh_index({a, I({"CALL", "#1"}), a}, 7);
  EXPECT_EQ(index.assignment.size(), 2u);
  auto d = zipdir_set();
  auto full = build_lsh_index(distinct_instructions(d), 7);
  auto fs = fingerprint_lsh(d, full);
  EXPECT_EQ(fs.paths[0].size(), 8u);
  EXPECT_EQ(fs.paths[0][2], fs.paths[0][3]);
  // Rebuilding with the same seed gives the same assignment.
  auto again = build_lsh_index(distinct_instructions(d), 7);
  for (const auto& [key, b] : full.assignment) EXPECT_EQ(again.at(key), b);
}

TEST(Lsh, StaleIndexIsDetected) {
  auto index = build_lsh_index({I({"=", "V", "L"})}, 1);
  EXPECT_THROW(lsh_fingerprint(index, "[CALL, #0]"), StaleIndexError);
  EXPECT_THROW(fingerprint_of("[=, V, L]", HashScheme::lsh, nullptr), std::invalid_argument);
}
