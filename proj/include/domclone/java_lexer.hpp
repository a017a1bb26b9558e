#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace domclone::java {

enum class TokenKind : std::uint8_t {
  identifier,
  keyword,
  int_literal,
  float_literal,
  char_literal,
  string_literal,
  punct,
  end_of_file,
};

struct Token {
  TokenKind kind = TokenKind::end_of_file;
  std::string text;
  int line = 0;
};

class LexError : public std::runtime_error {
 public:
  LexError(const std::string& what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline bool is_java_keyword(std::string_view word) {
  // Contextual words (var, record, yield, sealed, permits) stay identifiers.
  static constexpr std::string_view kKeywords[] = {
      "abstract", "assert", "boolean", "break", "byte", "case", "catch",
      "char", "class", "const", "continue", "default", "do", "double", "else",
      "enum", "extends", "final", "finally", "float", "for", "goto", "if",
      "implements", "import", "instanceof", "int", "interface", "long",
      "native", "new", "package", "private", "protected", "public", "return",
      "short", "static", "strictfp", "super", "switch", "synchronized", "this",
      "throw", "throws", "transient", "try", "void", "volatile", "while",
      "true", "false", "null"};
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

namespace detail {

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         (static_cast<unsigned char>(c) & 0x80);
}

inline bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

}  // namespace detail

// Tokenizes Java source. Comments and whitespace are dropped; every token
// carries the 1-based line it starts on. `>>` and `>>>` are emitted as single
// tokens; the parser splits them when closing type arguments.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  const std::size_t n = src.size();

  auto peek = [&](std::size_t k) -> char { return i + k < n ? src[i + k] : '\0'; };

  // Longest operators first.
  static constexpr std::string_view kPuncts[] = {
      ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
      "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
      "<<", ">>", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", ">",
      "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%"};

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      int start = line;
      i += 2;
      while (i < n && !(src[i] == '*' && peek(1) == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= n) throw LexError("unterminated block comment", start);
      i += 2;
      continue;
    }

    Token tok;
    tok.line = line;
    std::size_t begin = i;

    if (detail::ident_start(c)) {
      while (i < n && detail::ident_part(src[i])) ++i;
      tok.text.assign(src.substr(begin, i - begin));
      tok.kind = is_java_keyword(tok.text) ? TokenKind::keyword : TokenKind::identifier;
      out.push_back(std::move(tok));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      bool is_float = false;
      if (c == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' || peek(1) == 'B')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        if (i < n && src[i] == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
          is_float = true;
          ++i;
          while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        } else if (i < n && src[i] == '.' && !detail::ident_start(peek(1))) {
          is_float = true;
          ++i;
        }
        if (i < n && (src[i] == 'e' || src[i] == 'E')) {
          is_float = true;
          ++i;
          if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      if (i < n && std::string_view("lLfFdD").find(src[i]) != std::string_view::npos) {
        if (src[i] != 'l' && src[i] != 'L') is_float = true;
        ++i;
      }
      tok.kind = is_float ? TokenKind::float_literal : TokenKind::int_literal;
      tok.text.assign(src.substr(begin, i - begin));
      out.push_back(std::move(tok));
      continue;
    }

    if (c == '"' && peek(1) == '"' && peek(2) == '"') {
      int start = line;
      i += 3;
      while (i < n && !(src[i] == '"' && peek(1) == '"' && peek(2) == '"')) {
        if (src[i] == '\\') ++i;
        else if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= n) throw LexError("unterminated text block", start);
      i += 3;
      tok.kind = TokenKind::string_literal;
      tok.text.assign(src.substr(begin, i - begin));
      out.push_back(std::move(tok));
      continue;
    }

    if (c == '"' || c == '\'') {
      char quote = c;
      ++i;
      while (i < n && src[i] != quote) {
        if (src[i] == '\n') throw LexError("unterminated literal", line);
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) throw LexError("unterminated literal", line);
      ++i;
      tok.kind = quote == '"' ? TokenKind::string_literal : TokenKind::char_literal;
      tok.text.assign(src.substr(begin, i - begin));
      out.push_back(std::move(tok));
      continue;
    }

    bool matched = false;
    for (auto p : kPuncts) {
      if (src.substr(i, p.size()) == p) {
        tok.kind = TokenKind::punct;
        tok.text.assign(p);
        i += p.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw LexError(std::string("unexpected character '") + c + "'", line);
    }
    out.push_back(std::move(tok));
  }

  Token eof;
  eof.kind = TokenKind::end_of_file;
  eof.line = line;
  out.push_back(std::move(eof));
  return out;
}

}  // namespace domclone::java
