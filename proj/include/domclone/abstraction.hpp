#pragma once

#include <cstddef>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "domclone/cfg_builder.hpp"
#include "domclone/java_ast.hpp"

namespace domclone {

// One abstracted instruction: operator mnemonics in preorder with identifiers
// mapped to V, literals to L and callees to constant-pool references #k.
struct AbstractInstruction {
  std::vector<std::string> tokens;

  friend bool operator==(const AbstractInstruction&, const AbstractInstruction&) = default;
  friend auto operator<=>(const AbstractInstruction&, const AbstractInstruction&) = default;
};

// Callee names interned to dense indices. Safe for concurrent interning.
class ConstantPool {
 public:
  std::size_t intern(const std::string& name) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = index_.try_emplace(name, entries_.size());
    if (inserted) entries_.push_back(name);
    return it->second;
  }

  std::vector<std::string> entries() const {
    std::lock_guard lock(mutex_);
    return entries_;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

namespace detail {

class ExprEncoder {
 public:
  ExprEncoder(std::vector<std::string>& out, ConstantPool& pool, bool keep_call_names)
      : out_(out), pool_(pool), keep_(keep_call_names) {}

  void encode(const java::Expr& e) {
    using java::ExprKind;
    switch (e.kind) {
      case ExprKind::name:
      case ExprKind::this_ref:
      case ExprKind::super_ref:
      case ExprKind::array_access:
        out_.emplace_back("V");
        return;
      case ExprKind::literal:
      case ExprKind::class_literal:
        out_.emplace_back("L");
        return;
      case ExprKind::field_access:
        out_.emplace_back("FIELDREAD");
        return;
      case ExprKind::call:
        out_.emplace_back("CALL");
        callee(e.text);
        encode_all(e.children);
        if (e.target && !simple_receiver(*e.target)) encode(*e.target);
        return;
      case ExprKind::new_object:
        out_.emplace_back("NEW");
        callee(e.text + ".<init>");
        encode_all(e.children);
        return;
      case ExprKind::new_array:
        out_.emplace_back("NEWARRAY");
        out_.push_back(e.text);
        if (e.init) encode_all(e.init->children);
        return;
      case ExprKind::array_init:
        out_.emplace_back("ARRAYINIT");
        encode_all(e.children);
        return;
      case ExprKind::unary:
        out_.push_back(e.text);
        if (atomic(*e.children.at(0))) out_.emplace_back("V");
        else encode(*e.children[0]);
        return;
      case ExprKind::binary:
        out_.push_back(binary_mnemonic(e.text));
        encode_all(e.children);
        return;
      case ExprKind::assign:
        out_.push_back(e.text);
        out_.emplace_back("V");
        encode(*e.children.at(1));
        return;
      case ExprKind::conditional:
        out_.emplace_back("TERNARY");
        encode_all(e.children);
        return;
      case ExprKind::cast:
        out_.emplace_back("CAST");
        out_.push_back(e.text);
        encode(*e.children.at(0));
        return;
      case ExprKind::instance_of:
        out_.emplace_back("INSTANCEOF");
        encode(*e.children.at(0));
        out_.push_back(e.text);
        return;
      case ExprKind::lambda:
      case ExprKind::method_ref:
        out_.emplace_back("CALL");
        return;
      case ExprKind::switch_expr:
        out_.emplace_back("SWITCH");
        encode(*e.children.at(0));
        return;
    }
  }

 private:
  void encode_all(const std::vector<java::ExprPtr>& es) {
    for (const auto& c : es) encode(*c);
  }

  void callee(const std::string& name) {
    if (keep_) out_.push_back("#" + std::to_string(pool_.intern(name)));
  }

  static bool simple_receiver(const java::Expr& e) {
    using java::ExprKind;
    switch (e.kind) {
      case ExprKind::name:
      case ExprKind::this_ref:
      case ExprKind::super_ref:
      case ExprKind::field_access:
      case ExprKind::array_access:
      case ExprKind::literal:
      case ExprKind::class_literal:
        return true;
      default:
        return false;
    }
  }

  static bool atomic(const java::Expr& e) {
    using java::ExprKind;
    return e.kind == ExprKind::name || e.kind == ExprKind::literal || e.kind == ExprKind::this_ref ||
           e.kind == ExprKind::array_access || e.kind == ExprKind::field_access;
  }

  static std::string binary_mnemonic(const std::string& op) {
    static const std::unordered_map<std::string, std::string> kNames = {
        {"<", "LT"}, {"<=", "LE"}, {">", "GT"},   {">=", "GE"},
        {"==", "EQ"}, {"!=", "NE"}, {"&&", "AND"}, {"||", "OR"},
    };
    auto it = kNames.find(op);
    return it == kNames.end() ? op : it->second;
  }

  std::vector<std::string>& out_;
  ConstantPool& pool_;
  bool keep_;
};

}  // namespace detail

// Abstracts one lowered instruction. Interns callees into `pool` only when
// keep_call_names is set; otherwise calls keep the bare CALL/NEW shape.
inline AbstractInstruction abstract_instruction(const RawInstruction& raw, ConstantPool& pool,
                                                bool keep_call_names = true) {
  AbstractInstruction out;
  auto& t = out.tokens;
  detail::ExprEncoder enc(t, pool, keep_call_names);
  auto body = [&] {
    if (raw.expr) enc.encode(*raw.expr);
  };
  switch (raw.kind) {
    case InstrKind::expression:
      body();
      if (t.empty()) t.emplace_back("NOP");
      break;
    case InstrKind::declaration:
      t = {"=", "V"};
      body();
      break;
    case InstrKind::condition:
      t.emplace_back("COND");
      if (raw.expr) body();
      else t.emplace_back("L");
      break;
    case InstrKind::foreach_header:
      t = {"COND", "FOREACH", "V"};
      body();
      break;
    case InstrKind::switch_header:
      t = {"COND", "SWITCH"};
      body();
      break;
    case InstrKind::return_stmt:
      t.emplace_back("RETURN");
      body();
      break;
    case InstrKind::throw_stmt:
      t.emplace_back("THROW");
      body();
      break;
    case InstrKind::assertion:
      t.emplace_back("ASSERT");
      body();
      break;
    case InstrKind::monitor:
      t.emplace_back("MONITOR");
      body();
      break;
    case InstrKind::nop:
      t.emplace_back("NOP");
      break;
  }
  return out;
}

}  // namespace domclone
