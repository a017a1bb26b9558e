#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "domclone/abstraction.hpp"
#include "domclone/cfg_builder.hpp"
#include "domclone/dominators.hpp"
#include "domclone/java_parser.hpp"
#include "domclone/types.hpp"

namespace domclone {

struct ParsedMethod {
  CodeFragment fragment;
  java::MethodDecl decl;
};

struct ParseResult {
  std::vector<ParsedMethod> methods;
  std::vector<Diagnostic> diagnostics;
};

inline ParseResult parse_methods(std::string_view source, const std::string& file_path) {
  java::ParsedFile parsed = java::parse_java(source, file_path);
  ParseResult out;
  out.diagnostics = std::move(parsed.diagnostics);
  for (auto& m : parsed.methods) {
    CodeFragment f = CodeFragment::make(file_path, m.name, m.start_line, m.end_line);
    out.methods.push_back({std::move(f), std::move(m)});
  }
  return out;
}

// A method lowered as far as it can go without the shared constant pool. The
// raw tree points into `decl`, so a unit must not be copied.
struct MethodUnit {
  CodeFragment fragment;
  bool below_min_lines = false;
  java::MethodDecl decl;
  DominatorTree<RawInstruction> raw_tree;

  MethodUnit() = default;
  MethodUnit(MethodUnit&&) = default;
  MethodUnit& operator=(MethodUnit&&) = default;
};

struct FileAnalysis {
  std::string file_path;
  std::vector<MethodUnit> methods;
  std::vector<Diagnostic> diagnostics;
};

inline FileAnalysis analyze_source(std::string_view source, const std::string& file_path,
                                   int min_lines = 0) {
  FileAnalysis out;
  out.file_path = file_path;
  ParseResult parsed = parse_methods(source, file_path);
  out.diagnostics = std::move(parsed.diagnostics);
  for (auto& pm : parsed.methods) {
    MethodUnit unit;
    unit.fragment = std::move(pm.fragment);
    unit.below_min_lines = unit.fragment.source_line_count < min_lines;
    unit.decl = std::move(pm.decl);
    std::vector<std::string> notes;
    auto cfg = build_cfg(*unit.decl.body, &notes);
    for (auto& n : notes) {
      out.diagnostics.push_back(
          {Severity::note, file_path, unit.fragment.start_line, unit.fragment.method_name + ": " + n});
    }
    unit.raw_tree = build_dominator_tree(cfg);
    out.methods.push_back(std::move(unit));
  }
  return out;
}

inline DominatorTree<AbstractInstruction> abstract_tree(const DominatorTree<RawInstruction>& raw,
                                                        ConstantPool& pool, bool keep_call_names) {
  return raw.relabel([&](const RawInstruction& r) { return abstract_instruction(r, pool, keep_call_names); });
}

class SourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SourceError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Recursively collects files under each root whose extension is listed.
// A root may also name a single file. Output is sorted and duplicate-free.
inline std::vector<std::string> discover_sources(const std::vector<std::string>& roots,
                                                 const std::vector<std::string>& extensions = {".java"}) {
  namespace fs = std::filesystem;
  auto wanted = [&](const fs::path& p) {
    return std::find(extensions.begin(), extensions.end(), p.extension().string()) != extensions.end();
  };
  std::vector<std::string> out;
  for (const auto& root : roots) {
    std::error_code ec;
    if (fs::is_regular_file(root, ec)) {
      out.push_back(fs::path(root).lexically_normal().generic_string());
      continue;
    }
    if (!fs::is_directory(root, ec)) throw SourceError("input root is not a readable directory: " + root);
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw SourceError("cannot open " + root + ": " + ec.message());
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) throw SourceError("cannot walk " + root + ": " + ec.message());
      if (it->is_regular_file(ec) && wanted(it->path())) {
        out.push_back(it->path().lexically_normal().generic_string());
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace domclone
