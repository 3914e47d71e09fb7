#pragma once

// Access to the program corpus under corpus/. Free of gtest so the acceptance
// runner can share it.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mcsp/lang.hpp"

namespace mcsp::corpus {

struct Entry {
  std::string file;
  std::string source;
  std::string expected_kind;  // negative programs only
};

inline std::vector<Entry> load(const std::string& subdir) {
  std::vector<Entry> out;
  for (const auto& f : std::filesystem::directory_iterator(std::string(MCSP_CORPUS_DIR) + "/" + subdir)) {
    if (f.path().extension() != ".csp") continue;
    std::ifstream in(f.path());
    std::stringstream ss;
    ss << in.rdbuf();
    Entry e{f.path().filename().string(), ss.str(), ""};
    const std::string tag = "-- expect: ";
    if (e.source.rfind(tag, 0) == 0) e.expected_kind = e.source.substr(tag.size(), e.source.find('\n') - tag.size());
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.file < b.file; });
  return out;
}

/// Empty when printing and reparsing gives back the same definitions and the
/// printed form is a fixed point; otherwise a description of the mismatch.
inline std::string round_trip_problem(const Env& a) {
  std::string printed = pretty(a);
  Env b = parse(printed);
  if (a.definitions().size() != b.definitions().size()) return "definition count changed:\n" + printed;
  for (std::size_t i = 0; i < a.definitions().size(); ++i) {
    const auto& x = a.definitions()[i];
    const auto& y = b.definitions()[i];
    if (x.name != y.name || !(x.annotation == y.annotation) || !same_term(x.body, y.body))
      return "definition changed: " + pretty(x) + " vs " + pretty(y);
  }
  if (pretty(b) != printed) return "printing is not a fixed point:\n" + printed + "\nvs\n" + pretty(b);
  return "";
}

/// Diagnostic kinds reported for `source`, including a parse failure.
inline std::vector<std::string> diagnostic_kinds(const std::string& source) {
  std::vector<std::string> out;
  try {
    for (const auto& d : check_env(parse(source))) out.push_back(to_string(d.kind));
  } catch (const ParseError& e) {
    out.push_back(to_string(e.diagnostic().kind));
  }
  return out;
}

}  // namespace mcsp::corpus
