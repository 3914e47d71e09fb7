#pragma once

// Shorthands shared by the test suites.

#include <gtest/gtest.h>

#include <initializer_list>
#include <string>

#include "mcsp/failures.hpp"
#include "mcsp/lang.hpp"
#include "mcsp/lts.hpp"
#include "mcsp/traces.hpp"

namespace mcsp::testing {

inline Label L(const std::string& s) { return Label(s); }

inline std::vector<Label> Ls(std::initializer_list<const char*> names) {
  std::vector<Label> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

inline std::set<Label> Set(std::initializer_list<const char*> names) {
  std::set<Label> out;
  for (const char* n : names) out.emplace(n);
  return out;
}

inline Trace T(std::initializer_list<const char*> labels) { return Trace{Ls(labels), std::nullopt}; }
inline Trace T(std::initializer_list<const char*> labels, Value v) { return Trace{Ls(labels), std::move(v)}; }

inline Value atom(const std::string& s) { return Value::atom(s); }

inline Choice V() { return Choice::named("V", {"u", "w"}); }
inline Choice W() { return Choice::named("W", {"w"}); }

/// Parses and checks; fails the test on any diagnostic.
inline Env load(const std::string& src) {
  Env env = parse(src);
  auto ds = check_env(env);
  for (const auto& d : ds) ADD_FAILURE() << format(d);
  return env;
}

inline std::string show(const TraceSet& s) {
  std::string out = "{";
  for (const auto& t : s) out += (out.size() > 1 ? ", " : "") + t.to_string();
  return out + "}";
}

}  // namespace mcsp::testing
