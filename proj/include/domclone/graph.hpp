#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace domclone {

using NodeId = std::uint32_t;

// Control-flow graph with one node per instruction. Successor lists hold no
// duplicates and keep insertion order.
template <typename Label>
struct ControlFlowGraph {
  std::vector<Label> nodes;
  std::vector<std::vector<NodeId>> successors;
  NodeId start = 0;

  std::size_t size() const { return nodes.size(); }

  NodeId add_node(Label label) {
    nodes.push_back(std::move(label));
    successors.emplace_back();
    return static_cast<NodeId>(nodes.size() - 1);
  }

  void add_edge(NodeId from, NodeId to) {
    auto& succ = successors.at(from);
    if (std::find(succ.begin(), succ.end(), to) == succ.end()) succ.push_back(to);
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : successors) n += s.size();
    return n;
  }

  std::vector<std::vector<NodeId>> predecessors() const {
    std::vector<std::vector<NodeId>> preds(size());
    for (NodeId u = 0; u < size(); ++u) {
      for (NodeId v : successors[u]) preds[v].push_back(u);
    }
    return preds;
  }

  std::vector<bool> reachable() const {
    std::vector<bool> seen(size(), false);
    if (nodes.empty()) return seen;
    std::vector<NodeId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : successors[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

  bool all_reachable() const {
    auto seen = reachable();
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  // Drops nodes not reachable from start; surviving nodes keep relative order.
  void prune_unreachable() {
    auto seen = reachable();
    std::vector<NodeId> remap(size(), 0);
    NodeId next = 0;
    for (NodeId u = 0; u < size(); ++u) {
      if (seen[u]) remap[u] = next++;
    }
    if (next == size()) return;
    ControlFlowGraph out;
    out.nodes.reserve(next);
    for (NodeId u = 0; u < size(); ++u) {
      if (seen[u]) out.add_node(std::move(nodes[u]));
    }
    for (NodeId u = 0; u < size(); ++u) {
      if (!seen[u]) continue;
      for (NodeId v : successors[u]) out.add_edge(remap[u], remap[v]);
    }
    out.start = remap[start];
    *this = std::move(out);
  }

  template <typename F>
  auto relabel(F&& f) const -> ControlFlowGraph<decltype(f(nodes.front()))> {
    ControlFlowGraph<decltype(f(nodes.front()))> out;
    for (const auto& n : nodes) out.add_node(f(n));
    out.successors = successors;
    out.start = start;
    return out;
  }
};

// Tree of immediate dominators over the nodes of a control-flow graph.
template <typename Label>
struct DominatorTree {
  std::vector<Label> nodes;
  std::vector<std::optional<NodeId>> parent;  // empty for the root
  NodeId root = 0;

  std::size_t size() const { return nodes.size(); }

  // Children of every node in ascending node order.
  std::vector<std::vector<NodeId>> children() const {
    std::vector<std::vector<NodeId>> kids(size());
    for (NodeId n = 0; n < size(); ++n) {
      if (parent[n]) kids[*parent[n]].push_back(n);
    }
    return kids;
  }

  std::vector<NodeId> leaves() const {
    std::vector<bool> has_child(size(), false);
    for (const auto& p : parent) {
      if (p) has_child[*p] = true;
    }
    std::vector<NodeId> out;
    for (NodeId n = 0; n < size(); ++n) {
      if (!has_child[n]) out.push_back(n);
    }
    return out;
  }

  template <typename F>
  auto relabel(F&& f) const -> DominatorTree<decltype(f(nodes.front()))> {
    DominatorTree<decltype(f(nodes.front()))> out;
    out.nodes.reserve(size());
    for (const auto& n : nodes) out.nodes.push_back(f(n));
    out.parent = parent;
    out.root = root;
    return out;
  }
};

}  // namespace domclone
