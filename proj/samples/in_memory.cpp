#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "domclone/pipeline.hpp"

static const char* kFirst = R"(class A {
  int total(int[] xs) {
    int sum = 0;
    for (int i = 0; i < xs.length; i++) {
      sum += xs[i];
    }
    return sum;
  }
})";

static const char* kSecond = R"(class B {
  int accumulate(int[] values) {
    int acc = 0;
    for (int k = 0; k < values.length; k++) {
      acc += values[k];
    }
    return acc;
  }
})";

int main() {
  domclone::RunConfig cfg;
  cfg.match.min_clone_lines = 3;
  cfg.match.metric = domclone::Metric::lcs_modified;
  cfg.hashing = domclone::HashScheme::lsh;

  std::vector<std::pair<std::string, std::string>> sources = {{"A.java", kFirst}, {"B.java", kSecond}};
  auto res = domclone::run_on_sources(sources, cfg);
  domclone::write_report(std::cout, res.pairs, domclone::ReportFormat::jsonl);
  for (const auto& d : res.diagnostics) std::cerr << d.file_path << ":" << d.line << " " << d.message << "\n";
  return 0;
}
