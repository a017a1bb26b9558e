#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "domclone/abstraction.hpp"
#include "domclone/graph.hpp"
#include "domclone/types.hpp"

namespace domclone {

// Root-to-leaf paths of one fragment. multiplicity[i] counts how many
// original paths path i stands for; original_count is the path count before
// any merging. Used for description sets and, with hashed labels, for
// fingerprint sets.
template <typename Label>
struct PathSet {
  CodeFragment fragment;
  std::vector<std::vector<Label>> paths;
  std::vector<std::uint32_t> multiplicity;
  std::size_t original_count = 0;

  std::size_t weight() const { return std::accumulate(multiplicity.begin(), multiplicity.end(), std::size_t{0}); }
};

using Path = std::vector<AbstractInstruction>;
using DescriptionSet = PathSet<AbstractInstruction>;

// One path per leaf, leaves in preorder with children visited by node index.
template <typename Label>
PathSet<Label> extract_paths(const DominatorTree<Label>& tree, CodeFragment fragment = {}) {
  PathSet<Label> out;
  out.fragment = std::move(fragment);
  if (tree.size() == 0) return out;
  const auto kids = tree.children();
  std::vector<NodeId> chain;
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root, 0}};
  chain.push_back(tree.root);
  while (!stack.empty()) {
    auto& [u, i] = stack.back();
    if (kids[u].empty() && i == 0) {
      std::vector<Label> path;
      path.reserve(chain.size());
      for (NodeId n : chain) path.push_back(tree.nodes[n]);
      out.paths.push_back(std::move(path));
    }
    if (i < kids[u].size()) {
      NodeId v = kids[u][i++];
      chain.push_back(v);
      stack.emplace_back(v, 0);
    } else {
      chain.pop_back();
      stack.pop_back();
    }
  }
  out.multiplicity.assign(out.paths.size(), 1);
  out.original_count = out.paths.size();
  return out;
}

inline DescriptionSet extract_description_set(const DominatorTree<AbstractInstruction>& tree,
                                              CodeFragment fragment = {}) {
  return extract_paths(tree, std::move(fragment));
}

enum class MergeMode { none, identical, near };

namespace detail {

template <typename Label>
bool differ_in_one(const std::vector<Label>& a, const std::vector<Label>& b) {
  if (a.size() != b.size()) return false;
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size() && diff < 2; ++i) diff += !(a[i] == b[i]);
  return diff == 1;
}

}  // namespace detail

// identical: equal paths collapse into one entry, multiplicities summed,
// first occurrence kept. near: additionally collapses equal-length paths that
// differ at exactly one position into the smaller one, until none remain.
template <typename Label>
PathSet<Label> merge_paths(const PathSet<Label>& in, MergeMode mode) {
  if (mode == MergeMode::none) return in;
  PathSet<Label> out;
  out.fragment = in.fragment;
  out.original_count = in.original_count;
  std::map<std::vector<Label>, std::size_t> seen;
  for (std::size_t i = 0; i < in.paths.size(); ++i) {
    auto [it, inserted] = seen.try_emplace(in.paths[i], out.paths.size());
    if (inserted) {
      out.paths.push_back(in.paths[i]);
      out.multiplicity.push_back(in.multiplicity[i]);
    } else {
      out.multiplicity[it->second] += in.multiplicity[i];
    }
  }
  if (mode == MergeMode::identical) return out;

  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < out.paths.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < out.paths.size() && !merged; ++j) {
        if (!detail::differ_in_one(out.paths[i], out.paths[j])) continue;
        std::size_t keep = out.paths[j] < out.paths[i] ? j : i;
        std::size_t drop = keep == i ? j : i;
        out.multiplicity[keep] += out.multiplicity[drop];
        out.paths.erase(out.paths.begin() + static_cast<std::ptrdiff_t>(drop));
        out.multiplicity.erase(out.multiplicity.begin() + static_cast<std::ptrdiff_t>(drop));
        merged = true;
      }
    }
  }
  return out;
}

inline std::string serialize_instruction(const AbstractInstruction& instr) {
  std::string s = "[";
  for (std::size_t i = 0; i < instr.tokens.size(); ++i) {
    if (i) s += ", ";
    s += instr.tokens[i];
  }
  s += "]";
  return s;
}

inline AbstractInstruction parse_instruction(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("instruction must be enclosed in brackets");
  }
  text = text.substr(1, text.size() - 2);
  AbstractInstruction out;
  while (true) {
    auto pos = text.find(", ");
    out.tokens.emplace_back(text.substr(0, pos));
    if (out.tokens.back().empty()) throw std::invalid_argument("empty token in instruction");
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 2);
  }
  return out;
}

inline std::string serialize_path(const Path& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += "->";
    s += serialize_instruction(path[i]);
  }
  return s;
}

// Debug dump: one serialized path per line.
inline std::string dump_description_set(const DescriptionSet& dset) {
  std::string s;
  for (const auto& p : dset.paths) {
    s += serialize_path(p);
    s += '\n';
  }
  return s;
}

}  // namespace domclone
