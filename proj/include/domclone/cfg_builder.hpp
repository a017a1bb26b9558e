#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "domclone/graph.hpp"
#include "domclone/java_ast.hpp"

namespace domclone {

enum class InstrKind : std::uint8_t {
  expression,      // expression statement
  declaration,     // local variable with initializer
  condition,       // if / while / for / do-while test
  foreach_header,  // enhanced-for iteration test
  switch_header,
  return_stmt,
  throw_stmt,
  assertion,
  monitor,         // synchronized (expr)
  nop,             // placeholder for an empty body
};

// One lowered statement-level instruction. Points into the method's syntax
// tree, which must outlive it.
struct RawInstruction {
  InstrKind kind = InstrKind::nop;
  const java::Expr* expr = nullptr;
  int line = 0;
};

// Lowers a method body to a control-flow graph with one node per
// statement-level instruction.
//
// Loops get a back edge into their header node. `break` and `continue` add
// edges only and never become nodes. `finally` runs after the try body and
// each catch, and `return`/`throw` inside the try route through it. Catch
// blocks are entered from the first node of the try body. Dead code is pruned,
// so every node is reachable from start.
class CfgBuilder {
 public:
  explicit CfgBuilder(std::vector<std::string>* notes = nullptr) : notes_(notes) {}

  ControlFlowGraph<RawInstruction> build(const java::Stmt& body) {
    graph_ = {};
    has_start_ = false;
    Exits exits = lower(body, {kEntry});
    (void)exits;
    if (!has_start_) {
      graph_.nodes.clear();
      graph_.successors.clear();
      graph_.add_node(RawInstruction{InstrKind::nop, nullptr, body.line});
      graph_.start = 0;
    }
    graph_.prune_unreachable();
    return std::move(graph_);
  }

 private:
  static constexpr NodeId kEntry = std::numeric_limits<NodeId>::max();
  using Exits = std::vector<NodeId>;

  enum class ContextKind { loop, switch_block, labeled_block };
  struct JumpContext {
    ContextKind kind;
    std::string label;
    Exits breaks;
    Exits continues;  // loops whose continue target is created later
    std::optional<NodeId> continue_target;
  };
  struct FinallyContext {
    Exits abrupt;
  };

  NodeId emit(InstrKind kind, const java::Expr* expr, int line, const Exits& preds) {
    NodeId n = graph_.add_node(RawInstruction{kind, expr, line});
    for (NodeId p : preds) {
      if (p == kEntry) {
        graph_.start = n;
        has_start_ = true;
      } else {
        graph_.add_edge(p, n);
      }
    }
    return n;
  }

  void connect(const Exits& from, NodeId to) {
    for (NodeId p : from) {
      if (p == kEntry) {
        // Only reachable when a loop body is entirely empty; the header then
        // already carries the entry.
        continue;
      }
      graph_.add_edge(p, to);
    }
  }

  static void append(Exits& into, const Exits& from) { into.insert(into.end(), from.begin(), from.end()); }

  JumpContext* find_break_target(const std::string& label) {
    for (auto it = jumps_.rbegin(); it != jumps_.rend(); ++it) {
      if (label.empty() ? it->kind != ContextKind::labeled_block : it->label == label) return &*it;
    }
    return nullptr;
  }

  JumpContext* find_continue_target(const std::string& label) {
    for (auto it = jumps_.rbegin(); it != jumps_.rend(); ++it) {
      if (it->kind == ContextKind::loop && (label.empty() || it->label == label)) return &*it;
    }
    return nullptr;
  }

  void note(const std::string& what, int line) {
    if (notes_) notes_->push_back("line " + std::to_string(line) + ": " + what);
  }

  std::string take_label() {
    std::string l = std::move(pending_label_);
    pending_label_.clear();
    return l;
  }

  Exits lower_sequence(const std::vector<java::StmtPtr>& stmts, Exits in) {
    for (const auto& s : stmts) in = lower(*s, std::move(in));
    return in;
  }

  Exits lower(const java::Stmt& s, Exits in) {
    using java::StmtKind;
    switch (s.kind) {
      case StmtKind::block:
        return lower_sequence(s.body, std::move(in));

      case StmtKind::local_var:
        for (const auto& v : s.vars) {
          if (v.init) in = {emit(InstrKind::declaration, v.init.get(), v.line, in)};
        }
        return in;

      case StmtKind::expression:
        return {emit(InstrKind::expression, s.expr.get(), s.line, in)};

      case StmtKind::if_else: {
        NodeId c = emit(InstrKind::condition, s.expr.get(), s.line, in);
        Exits out = lower(*s.then_branch, {c});
        if (s.else_branch) append(out, lower(*s.else_branch, {c}));
        else out.push_back(c);
        return out;
      }

      case StmtKind::while_loop: {
        std::string label = take_label();
        NodeId c = emit(InstrKind::condition, s.expr.get(), s.line, in);
        jumps_.push_back({ContextKind::loop, label, {}, {}, c});
        Exits body = lower(*s.then_branch, {c});
        connect(body, c);
        JumpContext ctx = std::move(jumps_.back());
        jumps_.pop_back();
        Exits out{c};
        append(out, ctx.breaks);
        return out;
      }

      case StmtKind::do_while: {
        std::string label = take_label();
        const NodeId first = static_cast<NodeId>(graph_.size());
        jumps_.push_back({ContextKind::loop, label, {}, {}, std::nullopt});
        Exits body = lower(*s.then_branch, in);
        JumpContext ctx = std::move(jumps_.back());
        jumps_.pop_back();
        const bool body_has_nodes = graph_.size() > first;
        append(body, ctx.continues);
        NodeId c = emit(InstrKind::condition, s.expr.get(), s.line, body);
        graph_.add_edge(c, body_has_nodes ? first : c);
        Exits out{c};
        append(out, ctx.breaks);
        return out;
      }

      case StmtKind::for_loop: {
        std::string label = take_label();
        for (const auto& init : s.init) in = lower(*init, std::move(in));
        NodeId c = emit(InstrKind::condition, s.expr.get(), s.line, in);
        jumps_.push_back({ContextKind::loop, label, {}, {}, std::nullopt});
        Exits body = lower(*s.then_branch, {c});
        JumpContext ctx = std::move(jumps_.back());
        jumps_.pop_back();
        append(body, ctx.continues);
        for (const auto& u : s.update) body = {emit(InstrKind::expression, u.get(), u->line, body)};
        connect(body, c);
        Exits out;
        if (s.expr) out.push_back(c);
        append(out, ctx.breaks);
        return out;
      }

      case StmtKind::foreach_loop: {
        std::string label = take_label();
        NodeId h = emit(InstrKind::foreach_header, s.expr.get(), s.line, in);
        jumps_.push_back({ContextKind::loop, label, {}, {}, h});
        Exits body = lower(*s.then_branch, {h});
        connect(body, h);
        JumpContext ctx = std::move(jumps_.back());
        jumps_.pop_back();
        Exits out{h};
        append(out, ctx.breaks);
        return out;
      }

      case StmtKind::switch_block: {
        std::string label = take_label();
        NodeId h = emit(InstrKind::switch_header, s.expr.get(), s.line, in);
        jumps_.push_back({ContextKind::switch_block, label, {}, {}, std::nullopt});
        Exits out;
        Exits fall;
        bool has_default = false;
        for (const auto& c : s.cases) {
          has_default = has_default || c.is_default;
          Exits preds{h};
          append(preds, fall);
          Exits exits = lower_sequence(c.body, std::move(preds));
          if (c.arrow) {
            append(out, exits);
            fall.clear();
          } else {
            fall = std::move(exits);
          }
        }
        append(out, fall);
        JumpContext ctx = std::move(jumps_.back());
        jumps_.pop_back();
        append(out, ctx.breaks);
        if (!has_default) out.push_back(h);
        return out;
      }

      case StmtKind::break_jump: {
        if (JumpContext* t = find_break_target(s.label)) append(t->breaks, in);
        else note("break without target", s.line);
        return {};
      }

      case StmtKind::continue_jump: {
        JumpContext* t = find_continue_target(s.label);
        if (!t) {
          note("continue without enclosing loop", s.line);
          return {};
        }
        if (t->continue_target) connect(in, *t->continue_target);
        else append(t->continues, in);
        return {};
      }

      case StmtKind::return_jump:
      case StmtKind::throw_jump: {
        NodeId n = emit(s.kind == StmtKind::return_jump ? InstrKind::return_stmt : InstrKind::throw_stmt,
                        s.expr.get(), s.line, in);
        if (!finally_.empty()) finally_.back().abrupt.push_back(n);
        return {};
      }

      case StmtKind::try_block: {
        for (const auto& r : s.init) in = lower(*r, std::move(in));
        if (s.finally_block) finally_.push_back({});
        const NodeId first = static_cast<NodeId>(graph_.size());
        Exits out = lower(*s.then_branch, in);
        const bool try_has_nodes = graph_.size() > first;
        for (const auto& c : s.catches) {
          Exits preds;
          if (try_has_nodes) preds.push_back(first);
          append(out, lower(*c.body, std::move(preds)));
        }
        if (!s.finally_block) return out;
        FinallyContext ctx = std::move(finally_.back());
        finally_.pop_back();
        append(out, ctx.abrupt);
        return lower(*s.finally_block, std::move(out));
      }

      case StmtKind::synchronized_block: {
        NodeId m = emit(InstrKind::monitor, s.expr.get(), s.line, in);
        return lower(*s.then_branch, {m});
      }

      case StmtKind::labeled: {
        using java::StmtKind;
        const auto k = s.then_branch->kind;
        if (k == StmtKind::while_loop || k == StmtKind::do_while || k == StmtKind::for_loop ||
            k == StmtKind::foreach_loop || k == StmtKind::switch_block) {
          pending_label_ = s.label;
          return lower(*s.then_branch, std::move(in));
        }
        jumps_.push_back({ContextKind::labeled_block, s.label, {}, {}, std::nullopt});
        Exits out = lower(*s.then_branch, std::move(in));
        JumpContext ctx = std::move(jumps_.back());
        jumps_.pop_back();
        append(out, ctx.breaks);
        return out;
      }

      case StmtKind::assertion:
        return {emit(InstrKind::assertion, s.expr.get(), s.line, in)};

      case StmtKind::yield_jump:
        note("yield outside a switch expression passed through", s.line);
        return in;

      case StmtKind::empty:
      case StmtKind::local_class:
        return in;
    }
    note("unsupported statement passed through", s.line);
    return in;
  }

  ControlFlowGraph<RawInstruction> graph_;
  bool has_start_ = false;
  std::vector<JumpContext> jumps_;
  std::vector<FinallyContext> finally_;
  std::string pending_label_;
  std::vector<std::string>* notes_;
};

inline ControlFlowGraph<RawInstruction> build_cfg(const java::Stmt& body,
                                                  std::vector<std::string>* notes = nullptr) {
  return CfgBuilder(notes).build(body);
}

}  // namespace domclone
