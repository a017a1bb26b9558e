#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <tuple>

namespace domclone {

// A method-like body located in a source file. Lines are 1-based, inclusive.
struct CodeFragment {
  std::string file_path;
  std::string method_name;
  int start_line = 1;
  int end_line = 1;
  int source_line_count = 1;

  static CodeFragment make(std::string file, std::string method, int start, int end) {
    if (start < 1 || end < start) {
      throw std::invalid_argument("fragment line range is empty or inverted");
    }
    return CodeFragment{std::move(file), std::move(method), start, end, end - start + 1};
  }

  // Canonical ordering used by reports: file, then position.
  auto locator() const { return std::tie(file_path, start_line, end_line); }
  friend bool operator<(const CodeFragment& a, const CodeFragment& b) {
    return a.locator() < b.locator();
  }
  friend bool operator==(const CodeFragment& a, const CodeFragment& b) {
    return a.locator() == b.locator() && a.method_name == b.method_name;
  }
};

enum class Severity { note, warning, error };

struct Diagnostic {
  Severity severity = Severity::warning;
  std::string file_path;
  int line = 0;
  std::string message;
};

inline const char* severity_name(Severity s) {
  switch (s) {
    case Severity::note: return "note";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
  }
  return "?";
}

}  // namespace domclone
