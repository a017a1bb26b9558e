#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "domclone/descset.hpp"

namespace domclone {

enum class HashScheme { none, prime4, md5, lsh };

// Opaque fixed-width hash of one instruction. For `none` the bytes are the
// serialized instruction itself.
struct Fingerprint {
  std::string bytes;

  std::string hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    for (unsigned char c : bytes) {
      s += kDigits[c >> 4];
      s += kDigits[c & 15];
    }
    return s;
  }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

using FingerprintSet = PathSet<Fingerprint>;

inline Fingerprint md5_fingerprint(std::string_view text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_md5(), nullptr) != 1) {
    throw std::runtime_error("MD5 digest failed");
  }
  return {std::string(reinterpret_cast<const char*>(digest.data()), len)};
}

inline std::uint32_t prime_hash(std::string_view text) {
  std::uint32_t h = 0;
  for (unsigned char c : text) h = h * 31u + c;
  return h;
}

inline Fingerprint prime4_fingerprint(std::string_view text) {
  const std::uint32_t h = prime_hash(text);
  std::string b(4, '\0');
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((h >> (24 - 8 * i)) & 0xff);
  return {b};
}

class StaleIndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LshBucket {
  std::uint8_t cluster = 0;
  std::uint8_t bucket = 0;
  friend bool operator==(const LshBucket&, const LshBucket&) = default;
};

struct LshIndex {
  static constexpr int kMinCluster = 3;
  static constexpr int kMaxCluster = 8;
  static constexpr int kBuckets = 200;

  std::uint64_t seed = 0;
  std::unordered_map<std::string, LshBucket> assignment;

  static int cluster_of(std::size_t token_count) {
    return static_cast<int>(std::clamp<std::size_t>(token_count, kMinCluster, kMaxCluster));
  }

  LshBucket at(const std::string& serialized) const {
    auto it = assignment.find(serialized);
    if (it == assignment.end()) throw StaleIndexError("instruction not in LSH index: " + serialized);
    return it->second;
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Coarse token classes: operands and operators of one family look alike, so
// instructions that differ only within a family shingle identically.
inline std::string_view lsh_token_class(std::string_view t) {
  static const std::map<std::string_view, std::string_view> kClasses = {
      {"V", "OPND"},  {"L", "OPND"},  {"+", "ARITH"}, {"-", "ARITH"},  {"*", "ARITH"},
      {"/", "ARITH"}, {"%", "ARITH"}, {"LT", "REL"},  {"LE", "REL"},   {"GT", "REL"},
      {"GE", "REL"},  {"EQ", "REL"},  {"NE", "REL"},  {"+=", "ARITH="}, {"-=", "ARITH="},
      {"*=", "ARITH="}, {"/=", "ARITH="}, {"%=", "ARITH="},
  };
  auto it = kClasses.find(t);
  return it == kClasses.end() ? t : it->second;
}

constexpr int kLshHashes = 2;

inline std::uint8_t lsh_bucket(const AbstractInstruction& instr, std::uint64_t seed) {
  std::vector<std::uint64_t> shingles;
  const auto& t = instr.tokens;
  if (t.size() == 1) {
    shingles.push_back(fnv1a(lsh_token_class(t[0])));
  } else {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      shingles.push_back(fnv1a(lsh_token_class(t[i + 1]), fnv1a(lsh_token_class(t[i])) ^ 0x2f));
    }
  }
  std::uint64_t signature = 0;
  for (int k = 0; k < kLshHashes; ++k) {
    const std::uint64_t salt = splitmix64(seed * kLshHashes + static_cast<std::uint64_t>(k));
    std::uint64_t best = ~0ull;
    for (auto s : shingles) best = std::min(best, splitmix64(s ^ salt));
    signature = splitmix64(signature ^ best);
  }
  return static_cast<std::uint8_t>(signature % LshIndex::kBuckets);
}

}  // namespace detail

// Assigns every distinct instruction a (length cluster, bucket) pair.
inline LshIndex build_lsh_index(const std::vector<AbstractInstruction>& vocabulary, std::uint64_t seed) {
  LshIndex index;
  index.seed = seed;
  for (const auto& instr : vocabulary) {
    auto key = serialize_instruction(instr);
    if (index.assignment.count(key)) continue;
    LshBucket b{static_cast<std::uint8_t>(LshIndex::cluster_of(instr.tokens.size())),
                detail::lsh_bucket(instr, seed)};
    index.assignment.emplace(std::move(key), b);
  }
  return index;
}

inline Fingerprint lsh_fingerprint(const LshIndex& index, const std::string& serialized) {
  const LshBucket b = index.at(serialized);
  return {std::string{static_cast<char>(b.cluster), static_cast<char>(b.bucket)}};
}

// Fingerprint of one serialized instruction under `scheme`. The LSH scheme
// needs an index built over the same corpus.
inline Fingerprint fingerprint_of(const std::string& serialized, HashScheme scheme,
                                  const LshIndex* index = nullptr) {
  switch (scheme) {
    case HashScheme::none: return {serialized};
    case HashScheme::prime4: return prime4_fingerprint(serialized);
    case HashScheme::md5: return md5_fingerprint(serialized);
    case HashScheme::lsh:
      if (!index) throw std::invalid_argument("LSH fingerprinting needs an index");
      return lsh_fingerprint(*index, serialized);
  }
  throw std::invalid_argument("unknown hash scheme");
}

inline FingerprintSet fingerprint_set(const DescriptionSet& dset, HashScheme scheme,
                                      const LshIndex* index = nullptr) {
  FingerprintSet out;
  out.fragment = dset.fragment;
  out.multiplicity = dset.multiplicity;
  out.original_count = dset.original_count;
  out.paths.reserve(dset.paths.size());
  for (const auto& p : dset.paths) {
    std::vector<Fingerprint> fp;
    fp.reserve(p.size());
    for (const auto& instr : p) fp.push_back(fingerprint_of(serialize_instruction(instr), scheme, index));
    out.paths.push_back(std::move(fp));
  }
  return out;
}

inline FingerprintSet fingerprint_md5(const DescriptionSet& d) { return fingerprint_set(d, HashScheme::md5); }
inline FingerprintSet fingerprint_prime4(const DescriptionSet& d) { return fingerprint_set(d, HashScheme::prime4); }
inline FingerprintSet fingerprint_lsh(const DescriptionSet& d, const LshIndex& index) {
  return fingerprint_set(d, HashScheme::lsh, &index);
}

}  // namespace domclone
