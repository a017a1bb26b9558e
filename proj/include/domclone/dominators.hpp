#pragma once

#include <stdexcept>
#include <vector>

#include "domclone/graph.hpp"

namespace domclone {

namespace detail {

inline std::vector<NodeId> reverse_postorder(const std::vector<std::vector<NodeId>>& succ,
                                             NodeId start) {
  std::vector<NodeId> post;
  std::vector<char> state(succ.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<NodeId, std::size_t>> stack{{start, 0}};
  state[start] = 1;
  while (!stack.empty()) {
    auto& [u, i] = stack.back();
    if (i < succ[u].size()) {
      NodeId v = succ[u][i++];
      if (state[v] == 0) {
        state[v] = 1;
        stack.emplace_back(v, 0);
      }
    } else {
      state[u] = 2;
      post.push_back(u);
      stack.pop_back();
    }
  }
  return {post.rbegin(), post.rend()};
}

}  // namespace detail

// Immediate dominators by the iterative data-flow fixed point over reverse
// postorder (Cooper, Harvey and Kennedy). Every node must be reachable.
template <typename Label>
DominatorTree<Label> build_dominator_tree(const ControlFlowGraph<Label>& cfg) {
  const std::size_t n = cfg.size();
  if (n == 0) throw std::invalid_argument("dominator tree of an empty graph");
  if (!cfg.all_reachable()) {
    throw std::invalid_argument("control-flow graph has nodes unreachable from start");
  }

  const auto order = detail::reverse_postorder(cfg.successors, cfg.start);
  std::vector<std::size_t> rpo_index(n);
  for (std::size_t i = 0; i < order.size(); ++i) rpo_index[order[i]] = i;
  const auto preds = cfg.predecessors();

  constexpr NodeId kUndefined = static_cast<NodeId>(-1);
  std::vector<NodeId> idom(n, kUndefined);
  idom[cfg.start] = cfg.start;

  auto intersect = [&](NodeId a, NodeId b) {
    while (a != b) {
      while (rpo_index[a] > rpo_index[b]) a = idom[a];
      while (rpo_index[b] > rpo_index[a]) b = idom[b];
    }
    return a;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId u : order) {
      if (u == cfg.start) continue;
      NodeId candidate = kUndefined;
      for (NodeId p : preds[u]) {
        if (idom[p] == kUndefined) continue;
        candidate = candidate == kUndefined ? p : intersect(p, candidate);
      }
      if (candidate != idom[u]) {
        idom[u] = candidate;
        changed = true;
      }
    }
  }

  DominatorTree<Label> tree;
  tree.nodes = cfg.nodes;
  tree.root = cfg.start;
  tree.parent.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    if (u != cfg.start) tree.parent[u] = idom[u];
  }
  return tree;
}

}  // namespace domclone
