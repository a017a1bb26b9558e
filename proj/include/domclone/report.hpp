#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "domclone/config.hpp"
#include "domclone/matcher.hpp"

namespace domclone {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string shortest_double(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::pair<std::string, std::string> split_dir_file(const std::string& path) {
  std::filesystem::path p(path);
  return {p.parent_path().generic_string(), p.filename().generic_string()};
}

inline std::string join_dir_file(const std::string& dir, const std::string& file) {
  return dir.empty() ? file : (std::filesystem::path(dir) / file).generic_string();
}

inline nlohmann::json fragment_json(const CodeFragment& f) {
  auto [dir, file] = split_dir_file(f.file_path);
  return {{"dir", dir}, {"file", file}, {"start_line", f.start_line}, {"end_line", f.end_line},
          {"method", f.method_name}};
}

inline CodeFragment fragment_from_json(const nlohmann::json& j) {
  return CodeFragment::make(join_dir_file(j.at("dir").get<std::string>(), j.at("file").get<std::string>()),
                            j.value("method", std::string{}), j.at("start_line").get<int>(),
                            j.at("end_line").get<int>());
}

inline CloneKind parse_kind(const std::string& s) {
  if (s == "strict") return CloneKind::strict;
  if (s == "partial") return CloneKind::partial;
  throw ReportError("unknown clone kind '" + s + "'");
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<ClonePair>& pairs) {
  for (const auto& p : pairs) {
    for (const CodeFragment* f : {&p.left, &p.right}) {
      auto [dir, file] = detail::split_dir_file(f->file_path);
      out << detail::csv_field(dir) << ',' << detail::csv_field(file) << ',' << f->start_line << ','
          << f->end_line << ',';
    }
    out << detail::shortest_double(p.delta) << ',' << kind_name(p.kind) << '\n';
  }
}

inline void write_jsonl(std::ostream& out, const std::vector<ClonePair>& pairs) {
  for (const auto& p : pairs) {
    nlohmann::json j = {{"left", detail::fragment_json(p.left)},
                        {"right", detail::fragment_json(p.right)},
                        {"delta", p.delta},
                        {"kind", kind_name(p.kind)},
                        {"forced", p.forced}};
    out << j.dump() << '\n';
  }
}

inline void write_report(std::ostream& out, const std::vector<ClonePair>& pairs, ReportFormat format) {
  if (format == ReportFormat::csv) write_csv(out, pairs);
  else write_jsonl(out, pairs);
}

inline void write_report(const std::string& path, const std::vector<ClonePair>& pairs, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportError("cannot open report file " + path);
  write_report(out, pairs, format);
  out.flush();
  if (!out) throw ReportError("failed writing report file " + path);
}

inline std::vector<ClonePair> read_jsonl(std::istream& in) {
  std::vector<ClonePair> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    ClonePair p;
    p.left = detail::fragment_from_json(j.at("left"));
    p.right = detail::fragment_from_json(j.at("right"));
    p.delta = j.at("delta").get<double>();
    p.kind = detail::parse_kind(j.at("kind").get<std::string>());
    p.forced = j.value("forced", false);
    out.push_back(std::move(p));
  }
  return out;
}

// CSV rows carry no method names; fragments read back have them empty.
inline std::vector<ClonePair> read_csv(std::istream& in) {
  std::vector<ClonePair> out;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.empty()) continue;
    auto f = detail::split_csv_line(line);
    if (f.size() != 10) throw ReportError("report line " + std::to_string(lineno) + ": expected 10 fields");
    try {
      ClonePair p;
      p.left = CodeFragment::make(detail::join_dir_file(f[0], f[1]), "", std::stoi(f[2]), std::stoi(f[3]));
      p.right = CodeFragment::make(detail::join_dir_file(f[4], f[5]), "", std::stoi(f[6]), std::stoi(f[7]));
      p.delta = std::stod(f[8]);
      p.kind = detail::parse_kind(f[9]);
      out.push_back(std::move(p));
    } catch (const std::logic_error& e) {
      throw ReportError("report line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<ClonePair> read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportError("cannot read report " + path);
  int c = in.peek();
  return c == '{' ? read_jsonl(in) : read_csv(in);
}

}  // namespace domclone
