#pragma once

// Textual process definitions: parsing, checking (return types and
// guardedness), elaboration into kernel processes, and printing.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcsp/choice.hpp"
#include "mcsp/process.hpp"
#include "mcsp/term.hpp"

namespace mcsp {

struct Definition {
  std::string name;
  Choice annotation;
  Term body;
  SourcePos pos;
};

class Env {
 public:
  Env() = default;
  explicit Env(std::vector<Definition> defs) : defs_(std::move(defs)) {}

  const std::vector<Definition>& definitions() const { return defs_; }
  const Definition* find(std::string_view name) const;
  void add(Definition d) { defs_.push_back(std::move(d)); }
  bool empty() const { return defs_.empty(); }

 private:
  std::vector<Definition> defs_;
};

enum class DiagnosticKind { Syntax, Duplicate, UnknownName, Type, Unguarded, Pattern, Inference };

std::string to_string(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
  SourcePos pos;
  std::string definition;
};

std::string format(const Diagnostic& d);

class ParseError : public Error {
 public:
  ParseError(DiagnosticKind kind, const std::string& message, SourcePos pos);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

/// Throws ParseError for syntax errors and duplicate definition names.
Env parse(std::string_view text);

/// Type and guardedness diagnostics; empty when the environment is usable.
std::vector<Diagnostic> check_env(const Env& env);

/// Return type of `t` when it can be read off bottom-up (Refs, unions of
/// synthesizable operands, ...). Literals alone never synthesize.
std::optional<Choice> synthesize(const Env& env, const Term& t);

/// Whether `t` can elaborate to a terminated process.
bool may_terminate(const Env& env, const Term& t);

/// Elaborates a definition. The environment must pass check_env.
Process elaborate(const Env& env, std::string_view name);
/// Elaborates a term against an expected return type.
Process elaborate(const std::shared_ptr<const Env>& env, const Term& t, const Choice& ret);

std::string pretty(const Env& env);
std::string pretty(const Definition& d);

/// Collects every label of every definition, sorted and deduplicated.
std::vector<Label> alphabet(const Env& env);

}  // namespace mcsp
