#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// Syntax tree for the subset of Java the frontend needs: statements and
// expressions inside method-like bodies. Declarations outside bodies are
// consumed by the parser but not represented.
namespace domclone::java {

enum class ExprKind : std::uint8_t {
  name,
  literal,
  this_ref,
  super_ref,
  field_access,   // target.text
  array_access,   // children[0][children[1]]
  call,           // [target.]text(children...)
  new_object,     // new text(children...) [class body]
  new_array,      // new text[children...] [init]
  array_init,     // { children... }
  unary,          // text = mnemonic, children[0]
  binary,         // text = operator, children[0], children[1]
  assign,         // text = operator, children[0] = lvalue, children[1]
  conditional,    // children[0] ? children[1] : children[2]
  cast,           // (text) children[0]
  instance_of,    // children[0] instanceof text
  lambda,
  method_ref,
  class_literal,  // text.class
  switch_expr,    // switch (children[0]) { ... }
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::name;
  std::string text;
  ExprPtr target;
  std::vector<ExprPtr> children;
  ExprPtr init;  // array initializer of new_array
  int line = 0;
};

enum class StmtKind : std::uint8_t {
  block,
  local_var,
  expression,
  if_else,
  while_loop,
  do_while,
  for_loop,
  foreach_loop,
  switch_block,
  break_jump,
  continue_jump,
  return_jump,
  throw_jump,
  try_block,
  synchronized_block,
  labeled,
  assertion,
  yield_jump,
  empty,
  local_class,
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarDeclarator {
  std::string name;
  ExprPtr init;
  int line = 0;
};

struct SwitchCase {
  std::vector<ExprPtr> labels;
  bool is_default = false;
  bool arrow = false;
  std::vector<StmtPtr> body;
  int line = 0;
};

struct CatchClause {
  std::string variable;
  StmtPtr body;
};

struct Stmt {
  StmtKind kind = StmtKind::empty;
  int line = 0;
  std::string label;                // labeled statement / break / continue target
  std::vector<VarDeclarator> vars;  // local_var, foreach variable (vars[0])
  ExprPtr expr;                     // condition, expression, selector, value
  std::vector<StmtPtr> body;        // block statements
  std::vector<StmtPtr> init;        // for-init, try resources
  std::vector<ExprPtr> update;      // for-update
  StmtPtr then_branch;              // if-then, loop body, labeled/sync body, try block
  StmtPtr else_branch;
  std::vector<SwitchCase> cases;
  std::vector<CatchClause> catches;
  StmtPtr finally_block;
};

enum class MethodKind : std::uint8_t { method, constructor, initializer };

struct MethodDecl {
  std::string name;
  MethodKind kind = MethodKind::method;
  int start_line = 0;
  int end_line = 0;
  StmtPtr body;  // always a block
};

}  // namespace domclone::java
