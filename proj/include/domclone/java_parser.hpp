#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domclone/java_ast.hpp"
#include "domclone/java_lexer.hpp"
#include "domclone/types.hpp"

namespace domclone::java {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct ParsedFile {
  std::vector<MethodDecl> methods;  // sorted by start line
  std::vector<Diagnostic> diagnostics;
};

// Recursive-descent parser for Java compilation units at method granularity.
// Top-level member declarations without an enclosing class are accepted, so a
// file may hold a bare method snippet.
class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file_path)
      : toks_(std::move(tokens)), file_(std::move(file_path)) {}

  ParsedFile parse_file() {
    ParsedFile out;
    try {
      if (accept("package")) skip_past(";");
      while (is("import")) skip_past(";");
      while (!at_end()) parse_member();
    } catch (const ParseError& e) {
      out.diagnostics.push_back({Severity::error, file_, e.line(), e.what()});
      out.diagnostics.insert(out.diagnostics.end(), diags_.begin(), diags_.end());
      return out;
    }
    std::stable_sort(methods_.begin(), methods_.end(),
                     [](const MethodDecl& a, const MethodDecl& b) { return a.start_line < b.start_line; });
    out.methods = std::move(methods_);
    out.diagnostics = std::move(diags_);
    return out;
  }

 private:
  struct Mark {
    std::size_t pos;
    std::size_t undo;
  };

  // ---- token helpers -------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == TokenKind::end_of_file; }

  static bool is_word_or_punct(const Token& t) {
    return t.kind == TokenKind::punct || t.kind == TokenKind::keyword ||
           t.kind == TokenKind::identifier;
  }
  bool is(std::string_view text) const { return is_word_or_punct(cur()) && cur().text == text; }
  bool is_at(std::size_t k, std::string_view text) const {
    return is_word_or_punct(ahead(k)) && ahead(k).text == text;
  }
  bool is_ident() const { return cur().kind == TokenKind::identifier; }

  void advance() {
    if (!at_end()) ++pos_;
  }
  bool accept(std::string_view text) {
    if (!is(text)) return false;
    advance();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " near '" + cur().text + "'", cur().line);
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }
  std::string expect_ident() {
    if (!is_ident()) fail("expected identifier");
    std::string s = cur().text;
    advance();
    return s;
  }
  void skip_past(std::string_view text) {
    while (!at_end() && !is(text)) advance();
    expect(text);
  }

  Mark mark() const { return {pos_, undo_.size()}; }
  void restore(const Mark& m) {
    while (undo_.size() > m.undo) {
      toks_[undo_.back().first].text = undo_.back().second;
      undo_.pop_back();
    }
    pos_ = m.pos;
  }

  // Consumes one '>' closing a type-argument list, splitting '>>' and friends.
  bool accept_close_angle() {
    if (cur().kind != TokenKind::punct) return false;
    const std::string& t = cur().text;
    if (t == ">") {
      advance();
      return true;
    }
    if (t.size() > 1 && t[0] == '>') {
      undo_.emplace_back(pos_, t);
      toks_[pos_].text = t.substr(1);
      return true;
    }
    return false;
  }

  // Index of the token matching the opener at `from`.
  std::size_t matching(std::size_t from, std::string_view open, std::string_view close) const {
    int depth = 0;
    for (std::size_t i = from; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind != TokenKind::punct) continue;
      if (t.text == open) ++depth;
      else if (t.text == close && --depth == 0) return i;
    }
    throw ParseError("unbalanced '" + std::string(open) + "'", toks_[from].line);
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    if (!is(open)) fail("expected '" + std::string(open) + "'");
    pos_ = matching(pos_, open, close) + 1;
  }

  // ---- declarations --------------------------------------------------------

  static bool is_modifier(std::string_view w) {
    static constexpr std::string_view kMods[] = {
        "public", "protected", "private", "static", "final", "abstract", "native",
        "synchronized", "transient", "volatile", "strictfp", "default", "sealed"};
    return std::find(std::begin(kMods), std::end(kMods), w) != std::end(kMods);
  }

  void parse_annotation() {
    expect("@");
    expect_ident();
    while (is(".") && ahead(1).kind == TokenKind::identifier) {
      advance();
      advance();
    }
    if (is("(")) skip_balanced("(", ")");
  }

  // Returns true when `static` was among the modifiers.
  bool parse_modifiers() {
    bool is_static = false;
    for (;;) {
      if (is("@") && !is_at(1, "interface")) {
        parse_annotation();
      } else if (is("non") && is_at(1, "-") && is_at(2, "sealed")) {
        pos_ += 3;
      } else if (is_word_or_punct(cur()) && is_modifier(cur().text) &&
                 !(is("default") && (is_at(1, ":") || is_at(1, "->"))) &&
                 !(is("synchronized") && is_at(1, "("))) {
        if (is("static")) is_static = true;
        advance();
      } else {
        return is_static;
      }
    }
  }

  bool at_type_decl() const {
    if (is("class") || is("interface") || is("enum")) return true;
    if (is("@") && is_at(1, "interface")) return true;
    return is("record") && ahead(1).kind == TokenKind::identifier &&
           (is_at(2, "(") || is_at(2, "<"));
  }

  void parse_type_decl() {
    bool is_enum = is("enum");
    bool is_record = is("record");
    if (accept("@")) {
      expect("interface");
    } else {
      advance();
    }
    expect_ident();
    if (is_record) {
      if (is("<")) skip_balanced("<", ">");
      skip_balanced("(", ")");
    }
    while (!at_end() && !is("{")) {
      if (is("@")) parse_annotation();
      else advance();
    }
    if (is_enum) parse_enum_body();
    else parse_class_body();
  }

  void parse_class_body() {
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated class body");
      parse_member();
    }
    expect("}");
  }

  void parse_enum_body() {
    expect("{");
    while (!is(";") && !is("}")) {
      while (is("@")) parse_annotation();
      expect_ident();
      if (is("(")) parse_arguments();
      if (is("{")) parse_class_body();
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!is("}")) {
        if (at_end()) fail("unterminated enum body");
        parse_member();
      }
    }
    expect("}");
  }

  void parse_member() {
    if (accept(";")) return;
    const int start_line = cur().line;
    const bool is_static = parse_modifiers();
    if (is("{")) {
      parse_method_body(is_static ? "<clinit>" : "<init>", MethodKind::initializer, start_line);
      return;
    }
    if (at_type_decl()) {
      parse_type_decl();
      return;
    }
    if (is("<")) skip_balanced("<", ">");
    if (is_ident() && is_at(1, "(")) {
      std::string name = expect_ident();
      parse_method_rest(name, MethodKind::constructor, start_line);
      return;
    }
    if (is_ident() && is_at(1, "{")) {  // compact record constructor
      std::string name = expect_ident();
      parse_method_body(name, MethodKind::constructor, start_line);
      return;
    }
    parse_type();
    std::string name = expect_ident();
    if (is("(")) {
      parse_method_rest(name, MethodKind::method, start_line);
      return;
    }
    for (;;) {
      while (accept("[")) expect("]");
      if (accept("=")) parse_var_init();
      if (!accept(",")) break;
      expect_ident();
    }
    expect(";");
  }

  void parse_method_rest(const std::string& name, MethodKind kind, int start_line) {
    skip_balanced("(", ")");
    while (accept("[")) expect("]");
    if (accept("throws")) {
      while (!at_end() && !is("{") && !is(";")) advance();
    }
    if (accept("default")) {
      skip_past(";");
      return;
    }
    if (accept(";")) return;
    parse_method_body(name, kind, start_line);
  }

  void parse_method_body(const std::string& name, MethodKind kind, int start_line) {
    if (!is("{")) fail("expected method body");
    const std::size_t open = pos_;
    const std::size_t nested_before = methods_.size();
    MethodDecl decl;
    decl.name = name;
    decl.kind = kind;
    decl.start_line = start_line;
    try {
      decl.body = parse_block();
    } catch (const ParseError& e) {
      // Skip just this body; the rest of the file is still usable.
      std::size_t close = matching(open, "{", "}");
      diags_.push_back({Severity::warning, file_, e.line(),
                        "skipped method '" + name + "': " + e.what()});
      methods_.resize(nested_before);
      undo_.clear();
      pos_ = close + 1;
      return;
    }
    undo_.clear();
    decl.end_line = toks_[pos_ - 1].line;
    methods_.push_back(std::move(decl));
  }

  // ---- types ---------------------------------------------------------------

  static bool is_primitive(std::string_view w) {
    static constexpr std::string_view kPrims[] = {"boolean", "byte", "char", "short", "int",
                                                  "long", "float", "double", "void"};
    return std::find(std::begin(kPrims), std::end(kPrims), w) != std::end(kPrims);
  }

  void parse_type_args() {
    expect("<");
    if (accept_close_angle()) return;  // diamond
    for (;;) {
      while (is("@")) parse_annotation();
      if (accept("?")) {
        if (accept("extends") || accept("super")) parse_type();
      } else {
        parse_type();
      }
      while (accept("&")) parse_type();
      if (!accept(",")) break;
    }
    if (!accept_close_angle()) fail("expected '>'");
  }

  // Returns the simple name of the type with "[]" per dimension.
  std::string parse_type() {
    while (is("@")) parse_annotation();
    std::string name;
    if (cur().kind == TokenKind::keyword && is_primitive(cur().text)) {
      name = cur().text;
      advance();
    } else if (is_ident()) {
      name = cur().text;
      advance();
      if (is("<")) parse_type_args();
      while (is(".") && (ahead(1).kind == TokenKind::identifier || is_at(1, "@"))) {
        advance();
        while (is("@")) parse_annotation();
        name = expect_ident();
        if (is("<")) parse_type_args();
      }
    } else {
      fail("expected type");
    }
    while (is("@")) parse_annotation();
    while (is("[") && is_at(1, "]")) {
      pos_ += 2;
      name += "[]";
    }
    if (accept("...")) name += "[]";
    return name;
  }

  bool try_parse_type() {
    Mark m = mark();
    try {
      parse_type();
      return true;
    } catch (const ParseError&) {
      restore(m);
      return false;
    }
  }

  // ---- statements ----------------------------------------------------------

  StmtPtr make_stmt(StmtKind kind, int line) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->line = line;
    return s;
  }

  StmtPtr parse_block() {
    auto s = make_stmt(StmtKind::block, cur().line);
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated block");
      s->body.push_back(parse_statement());
    }
    expect("}");
    return s;
  }

  // Local modifiers: final and annotations.
  void parse_local_modifiers() {
    for (;;) {
      if (is("@") && !is_at(1, "interface")) parse_annotation();
      else if (is("final") || is("abstract") || is("static") || is("strictfp")) advance();
      else return;
    }
  }

  // Speculatively consumes `modifiers Type name` when followed by one of the
  // declarator continuations. Leaves the position on the name when it succeeds.
  bool looks_like_declaration(std::initializer_list<std::string_view> follow) {
    Mark m = mark();
    parse_local_modifiers();
    if (try_parse_type() && is_ident()) {
      for (auto f : follow) {
        if (is_at(1, f)) return true;
      }
    }
    restore(m);
    return false;
  }

  StmtPtr parse_local_var_rest(int line) {
    auto s = make_stmt(StmtKind::local_var, line);
    for (;;) {
      VarDeclarator d;
      d.line = cur().line;
      d.name = expect_ident();
      while (accept("[")) expect("]");
      if (accept("=")) d.init = parse_var_init();
      s->vars.push_back(std::move(d));
      if (!accept(",")) break;
    }
    return s;
  }

  bool yield_statement_ahead() const {
    if (!is("yield")) return false;
    const Token& n = ahead(1);
    if (n.kind != TokenKind::punct) return true;
    static constexpr std::string_view kNotYield[] = {"=", "(", ".", "[", "+=", "-=", "*=",
                                                     "/=", "++", "--", ";", "::"};
    return std::find(std::begin(kNotYield), std::end(kNotYield), n.text) == std::end(kNotYield);
  }

  StmtPtr parse_statement() {
    const int line = cur().line;
    if (is("{")) return parse_block();
    if (accept(";")) return make_stmt(StmtKind::empty, line);

    if (accept("if")) {
      auto s = make_stmt(StmtKind::if_else, line);
      s->expr = parse_par_expr();
      s->then_branch = parse_statement();
      if (accept("else")) s->else_branch = parse_statement();
      return s;
    }
    if (accept("while")) {
      auto s = make_stmt(StmtKind::while_loop, line);
      s->expr = parse_par_expr();
      s->then_branch = parse_statement();
      return s;
    }
    if (accept("do")) {
      auto s = make_stmt(StmtKind::do_while, line);
      s->then_branch = parse_statement();
      expect("while");
      s->expr = parse_par_expr();
      expect(";");
      return s;
    }
    if (is("for")) return parse_for();
    if (is("switch")) {
      advance();
      auto s = make_stmt(StmtKind::switch_block, line);
      s->expr = parse_par_expr();
      s->cases = parse_switch_body();
      return s;
    }
    if (accept("return")) {
      auto s = make_stmt(StmtKind::return_jump, line);
      if (!is(";")) s->expr = parse_expr();
      expect(";");
      return s;
    }
    if (accept("throw")) {
      auto s = make_stmt(StmtKind::throw_jump, line);
      s->expr = parse_expr();
      expect(";");
      return s;
    }
    if (is("break") || is("continue")) {
      auto s = make_stmt(is("break") ? StmtKind::break_jump : StmtKind::continue_jump, line);
      advance();
      if (is_ident()) s->label = expect_ident();
      expect(";");
      return s;
    }
    if (is("try")) return parse_try();
    if (is("synchronized") && is_at(1, "(")) {
      advance();
      auto s = make_stmt(StmtKind::synchronized_block, line);
      s->expr = parse_par_expr();
      s->then_branch = parse_block();
      return s;
    }
    if (accept("assert")) {
      auto s = make_stmt(StmtKind::assertion, line);
      s->expr = parse_expr();
      if (accept(":")) parse_expr();
      expect(";");
      return s;
    }
    if (yield_statement_ahead()) {
      advance();
      auto s = make_stmt(StmtKind::yield_jump, line);
      s->expr = parse_expr();
      expect(";");
      return s;
    }
    if (is_ident() && is_at(1, ":")) {
      auto s = make_stmt(StmtKind::labeled, line);
      s->label = expect_ident();
      expect(":");
      s->then_branch = parse_statement();
      return s;
    }
    {
      Mark m = mark();
      parse_local_modifiers();
      if (at_type_decl()) {
        parse_type_decl();
        return make_stmt(StmtKind::local_class, line);
      }
      restore(m);
    }
    if (looks_like_declaration({"=", ";", ",", "[", ":"})) {
      auto s = parse_local_var_rest(line);
      expect(";");
      return s;
    }
    auto s = make_stmt(StmtKind::expression, line);
    s->expr = parse_expr();
    expect(";");
    return s;
  }

  StmtPtr parse_for() {
    const int line = cur().line;
    expect("for");
    expect("(");
    if (looks_like_declaration({":"})) {
      auto s = make_stmt(StmtKind::foreach_loop, line);
      VarDeclarator d;
      d.line = cur().line;
      d.name = expect_ident();
      s->vars.push_back(std::move(d));
      expect(":");
      s->expr = parse_expr();
      expect(")");
      s->then_branch = parse_statement();
      return s;
    }
    auto s = make_stmt(StmtKind::for_loop, line);
    if (!is(";")) {
      if (looks_like_declaration({"=", ";", ",", "["})) {
        s->init.push_back(parse_local_var_rest(cur().line));
      } else {
        do {
          auto e = make_stmt(StmtKind::expression, cur().line);
          e->expr = parse_expr();
          s->init.push_back(std::move(e));
        } while (accept(","));
      }
    }
    expect(";");
    if (!is(";")) s->expr = parse_expr();
    expect(";");
    if (!is(")")) {
      do {
        s->update.push_back(parse_expr());
      } while (accept(","));
    }
    expect(")");
    s->then_branch = parse_statement();
    return s;
  }

  StmtPtr parse_try() {
    const int line = cur().line;
    expect("try");
    auto s = make_stmt(StmtKind::try_block, line);
    if (accept("(")) {
      while (!is(")")) {
        if (looks_like_declaration({"="})) {
          s->init.push_back(parse_local_var_rest(cur().line));
        } else {
          auto e = make_stmt(StmtKind::expression, cur().line);
          e->expr = parse_expr();
          s->init.push_back(std::move(e));
        }
        if (!accept(";")) break;
      }
      expect(")");
    }
    s->then_branch = parse_block();
    while (accept("catch")) {
      expect("(");
      parse_local_modifiers();
      parse_type();
      while (accept("|")) parse_type();
      CatchClause c;
      c.variable = expect_ident();
      expect(")");
      c.body = parse_block();
      s->catches.push_back(std::move(c));
    }
    if (accept("finally")) s->finally_block = parse_block();
    if (s->catches.empty() && !s->finally_block && s->init.empty()) {
      fail("try without catch or finally");
    }
    return s;
  }

  std::vector<SwitchCase> parse_switch_body() {
    std::vector<SwitchCase> cases;
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated switch");
      SwitchCase c;
      c.line = cur().line;
      if (accept("default")) {
        c.is_default = true;
      } else {
        expect("case");
        do {
          if (accept("default")) {
            c.is_default = true;
            continue;
          }
          if (looks_like_declaration({"->", ":", "when"})) {
            auto e = make_expr(ExprKind::name, cur().line);
            e->text = expect_ident();
            c.labels.push_back(std::move(e));
          } else {
            c.labels.push_back(parse_ternary());
          }
          if (accept("when")) parse_ternary();
        } while (accept(","));
      }
      if (accept("->")) {
        c.arrow = true;
        if (is("{")) {
          c.body.push_back(parse_block());
        } else if (is("throw")) {
          c.body.push_back(parse_statement());
        } else {
          auto e = make_stmt(StmtKind::expression, cur().line);
          e->expr = parse_expr();
          expect(";");
          c.body.push_back(std::move(e));
        }
      } else {
        expect(":");
        while (!is("case") && !is("default") && !is("}")) {
          if (at_end()) fail("unterminated switch");
          c.body.push_back(parse_statement());
        }
      }
      cases.push_back(std::move(c));
    }
    expect("}");
    return cases;
  }

  // ---- expressions ---------------------------------------------------------

  ExprPtr make_expr(ExprKind kind, int line) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = line;
    return e;
  }

  ExprPtr parse_par_expr() {
    expect("(");
    auto e = parse_expr();
    expect(")");
    return e;
  }

  ExprPtr parse_var_init() {
    if (is("{")) return parse_array_init();
    return parse_expr();
  }

  ExprPtr parse_array_init() {
    auto e = make_expr(ExprKind::array_init, cur().line);
    expect("{");
    while (!is("}")) {
      e->children.push_back(parse_var_init());
      if (!accept(",")) break;
    }
    expect("}");
    return e;
  }

  std::vector<ExprPtr> parse_arguments() {
    std::vector<ExprPtr> args;
    expect("(");
    if (accept(")")) return args;
    for (;;) {
      args.push_back(parse_expr());
      if (!accept(",")) break;
    }
    expect(")");
    return args;
  }

  bool lambda_ahead() const {
    if (is_ident() && is_at(1, "->")) return true;
    if (!is("(")) return false;
    try {
      std::size_t close = matching(pos_, "(", ")");
      return close + 1 < toks_.size() && toks_[close + 1].kind == TokenKind::punct &&
             toks_[close + 1].text == "->";
    } catch (const ParseError&) {
      return false;
    }
  }

  ExprPtr parse_lambda() {
    auto e = make_expr(ExprKind::lambda, cur().line);
    if (is_ident()) advance();
    else skip_balanced("(", ")");
    expect("->");
    if (is("{")) parse_block();
    else parse_expr();
    return e;
  }

  static bool is_assign_op(const Token& t) {
    if (t.kind != TokenKind::punct) return false;
    static constexpr std::string_view kOps[] = {"=", "+=", "-=", "*=", "/=", "%=", "&=",
                                                "|=", "^=", "<<=", ">>=", ">>>="};
    return std::find(std::begin(kOps), std::end(kOps), t.text) != std::end(kOps);
  }

  ExprPtr parse_expr() {
    if (lambda_ahead()) return parse_lambda();
    auto lhs = parse_ternary();
    if (is_assign_op(cur())) {
      auto e = make_expr(ExprKind::assign, cur().line);
      e->text = cur().text;
      advance();
      e->children.push_back(std::move(lhs));
      e->children.push_back(parse_expr());
      return e;
    }
    return lhs;
  }

  ExprPtr parse_ternary() {
    auto c = parse_binary(1);
    if (!is("?")) return c;
    auto e = make_expr(ExprKind::conditional, cur().line);
    advance();
    e->children.push_back(std::move(c));
    e->children.push_back(parse_expr());
    expect(":");
    e->children.push_back(lambda_ahead() ? parse_lambda() : parse_ternary());
    return e;
  }

  static int binary_precedence(const Token& t) {
    if (t.kind == TokenKind::keyword) return t.text == "instanceof" ? 7 : 0;
    if (t.kind != TokenKind::punct) return 0;
    const std::string& s = t.text;
    if (s == "||") return 1;
    if (s == "&&") return 2;
    if (s == "|") return 3;
    if (s == "^") return 4;
    if (s == "&") return 5;
    if (s == "==" || s == "!=") return 6;
    if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
    if (s == "<<" || s == ">>" || s == ">>>") return 8;
    if (s == "+" || s == "-") return 9;
    if (s == "*" || s == "/" || s == "%") return 10;
    return 0;
  }

  ExprPtr parse_binary(int min_prec) {
    auto left = parse_unary();
    for (;;) {
      int prec = binary_precedence(cur());
      if (prec == 0 || prec < min_prec) return left;
      const int line = cur().line;
      if (accept("instanceof")) {
        auto e = make_expr(ExprKind::instance_of, line);
        accept("final");
        e->text = parse_type();
        if (is_ident()) advance();  // pattern binding
        else if (is("(")) skip_balanced("(", ")");  // record pattern
        e->children.push_back(std::move(left));
        left = std::move(e);
        continue;
      }
      auto e = make_expr(ExprKind::binary, line);
      e->text = cur().text;
      advance();
      e->children.push_back(std::move(left));
      e->children.push_back(parse_binary(prec + 1));
      left = std::move(e);
    }
  }

  bool cast_ahead() {
    if (!is("(")) return false;
    Mark m = mark();
    advance();
    bool primitive = cur().kind == TokenKind::keyword && is_primitive(cur().text);
    bool ok = try_parse_type();
    while (ok && accept("&")) ok = try_parse_type();
    if (!ok || !is(")")) {
      restore(m);
      return false;
    }
    advance();
    const Token& n = cur();
    bool operand_follows = false;
    switch (n.kind) {
      case TokenKind::identifier:
      case TokenKind::int_literal:
      case TokenKind::float_literal:
      case TokenKind::char_literal:
      case TokenKind::string_literal:
        operand_follows = true;
        break;
      case TokenKind::keyword:
        operand_follows = n.text == "this" || n.text == "super" || n.text == "new" ||
                          n.text == "true" || n.text == "false" || n.text == "null" ||
                          n.text == "switch" || is_primitive(n.text);
        break;
      case TokenKind::punct:
        operand_follows = n.text == "(" || n.text == "!" || n.text == "~" ||
                          (primitive && (n.text == "+" || n.text == "-" || n.text == "++" ||
                                         n.text == "--"));
        break;
      default:
        break;
    }
    restore(m);
    return operand_follows;
  }

  ExprPtr parse_unary() {
    const int line = cur().line;
    const char* mnemonic = nullptr;
    if (is("++")) mnemonic = "PREINC";
    else if (is("--")) mnemonic = "PREDEC";
    else if (is("-")) mnemonic = "NEG";
    else if (is("+")) mnemonic = "POS";
    else if (is("!")) mnemonic = "NOT";
    else if (is("~")) mnemonic = "COMPL";
    if (mnemonic) {
      advance();
      auto e = make_expr(ExprKind::unary, line);
      e->text = mnemonic;
      e->children.push_back(parse_unary());
      return e;
    }
    if (cast_ahead()) {
      auto e = make_expr(ExprKind::cast, line);
      expect("(");
      e->text = parse_type();
      while (accept("&")) parse_type();
      expect(")");
      e->children.push_back(lambda_ahead() ? parse_lambda() : parse_unary());
      return e;
    }
    return parse_postfix(parse_primary());
  }

  ExprPtr parse_primary() {
    const int line = cur().line;
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::int_literal:
      case TokenKind::float_literal:
      case TokenKind::char_literal:
      case TokenKind::string_literal: {
        auto e = make_expr(ExprKind::literal, line);
        e->text = t.text;
        advance();
        return e;
      }
      case TokenKind::identifier: {
        if (is_at(1, "(")) {
          auto e = make_expr(ExprKind::call, line);
          e->text = expect_ident();
          e->children = parse_arguments();
          return e;
        }
        auto e = make_expr(ExprKind::name, line);
        e->text = expect_ident();
        return e;
      }
      case TokenKind::keyword:
        break;
      default:
        if (is("(")) {
          advance();
          auto e = parse_expr();
          expect(")");
          return e;
        }
        fail("expected expression");
    }

    if (is("true") || is("false") || is("null")) {
      auto e = make_expr(ExprKind::literal, line);
      e->text = t.text;
      advance();
      return e;
    }
    if (is("this") || is("super")) {
      const bool is_this = is("this");
      advance();
      if (is("(")) {
        auto e = make_expr(ExprKind::call, line);
        e->text = is_this ? "this" : "super";
        e->children = parse_arguments();
        return e;
      }
      return make_expr(is_this ? ExprKind::this_ref : ExprKind::super_ref, line);
    }
    if (accept("new")) return parse_creator(line);
    if (is("switch")) {
      advance();
      auto e = make_expr(ExprKind::switch_expr, line);
      e->children.push_back(parse_par_expr());
      parse_switch_body();
      return e;
    }
    if (is_primitive(t.text)) {
      std::string type = parse_type();
      if (accept("::")) {
        if (!accept("new")) expect_ident();
        return make_expr(ExprKind::method_ref, line);
      }
      expect(".");
      expect("class");
      auto e = make_expr(ExprKind::class_literal, line);
      e->text = type;
      return e;
    }
    fail("expected expression");
  }

  ExprPtr parse_creator(int line) {
    while (is("@")) parse_annotation();
    if (is("<")) parse_type_args();
    std::string type;
    if (cur().kind == TokenKind::keyword && is_primitive(cur().text)) {
      type = cur().text;
      advance();
    } else {
      type = expect_ident();
      if (is("<")) parse_type_args();
      while (accept(".")) {
        while (is("@")) parse_annotation();
        type = expect_ident();
        if (is("<")) parse_type_args();
      }
    }
    if (is("[")) {
      auto e = make_expr(ExprKind::new_array, line);
      e->text = type;
      while (accept("[")) {
        if (accept("]")) continue;
        e->children.push_back(parse_expr());
        expect("]");
      }
      if (is("{")) e->init = parse_array_init();
      return e;
    }
    auto e = make_expr(ExprKind::new_object, line);
    e->text = type;
    e->children = parse_arguments();
    if (is("{")) parse_class_body();
    return e;
  }

  ExprPtr parse_postfix(ExprPtr e) {
    for (;;) {
      const int line = cur().line;
      if (is(".")) {
        advance();
        if (accept("new")) {
          e = parse_creator(line);
          continue;
        }
        if (is("<")) parse_type_args();
        if (accept("class")) {
          auto c = make_expr(ExprKind::class_literal, line);
          c->text = e->text;
          e = std::move(c);
          continue;
        }
        if (accept("this")) {
          e = make_expr(ExprKind::this_ref, line);
          continue;
        }
        if (accept("super")) {
          e = make_expr(ExprKind::super_ref, line);
          continue;
        }
        std::string name = expect_ident();
        if (is("(")) {
          auto c = make_expr(ExprKind::call, line);
          c->text = std::move(name);
          c->target = std::move(e);
          c->children = parse_arguments();
          e = std::move(c);
        } else {
          auto f = make_expr(ExprKind::field_access, line);
          f->text = std::move(name);
          f->target = std::move(e);
          e = std::move(f);
        }
      } else if (is("[")) {
        if (is_at(1, "]")) {  // Type[].class or Type[]::new
          while (is("[") && is_at(1, "]")) pos_ += 2;
          if (accept("::")) {
            if (!accept("new")) expect_ident();
            e = make_expr(ExprKind::method_ref, line);
          } else {
            expect(".");
            expect("class");
            auto c = make_expr(ExprKind::class_literal, line);
            c->text = e->text + "[]";
            e = std::move(c);
          }
          continue;
        }
        advance();
        auto a = make_expr(ExprKind::array_access, line);
        a->children.push_back(std::move(e));
        a->children.push_back(parse_expr());
        expect("]");
        e = std::move(a);
      } else if (is("++") || is("--")) {
        auto u = make_expr(ExprKind::unary, line);
        u->text = is("++") ? "POSTINC" : "POSTDEC";
        advance();
        u->children.push_back(std::move(e));
        e = std::move(u);
      } else if (is("::")) {
        advance();
        if (!accept("new")) expect_ident();
        e = make_expr(ExprKind::method_ref, line);
      } else {
        return e;
      }
    }
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::size_t, std::string>> undo_;
  std::vector<MethodDecl> methods_;
  std::vector<Diagnostic> diags_;
};

// Parses one source file. Lexical errors and unrecoverable syntax errors give
// an empty method list plus a diagnostic; a broken method body is skipped.
inline ParsedFile parse_java(std::string_view source, const std::string& file_path) {
  std::vector<Token> tokens;
  try {
    tokens = tokenize(source);
  } catch (const LexError& e) {
    ParsedFile out;
    out.diagnostics.push_back({Severity::error, file_path, e.line(), e.what()});
    return out;
  }
  return Parser(std::move(tokens), file_path).parse_file();
}

}  // namespace domclone::java
