#pragma once

// Process terms: the surface syntax of the DSL and the display form every
// kernel process carries.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcsp/choice.hpp"

namespace mcsp {

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class TermKind { Stop, Skip, Return, Prefix, ExtChoice, IntChoice, Bind, Fmap, AddTick, Ref };

class TermNode;
using Term = std::shared_ptr<const TermNode>;

struct Branch {
  Value pattern;
  Term body;
};

class TermNode {
 public:
  TermKind kind = TermKind::Stop;
  Value value;                         // Skip, Return, AddTick
  Label label;                         // Prefix
  std::string name;                    // Ref
  ValueMap::Name fn = ValueMap::Name::Id;  // Fmap
  std::shared_ptr<const ValueMap> typed_fn;  // Fmap, when built by the kernel
  std::vector<Term> kids;              // operands, left to right
  std::vector<Branch> branches;        // Bind
  SourcePos pos;
};

namespace term {

Term stop(SourcePos pos = {});
Term skip(Value v, SourcePos pos = {});
Term ret(Value v, SourcePos pos = {});
Term prefix(Label l, Term cont, SourcePos pos = {});
Term ext_choice(Term p, Term q, SourcePos pos = {});
Term int_choice(Term p, Term q, SourcePos pos = {});
Term bind(Term scrutinee, std::vector<Branch> branches, SourcePos pos = {});
Term fmap(ValueMap::Name fn, Term p, SourcePos pos = {});
Term fmap(const ValueMap& fn, Term p);
Term add_tick(Value v, Term p, SourcePos pos = {});
Term ref(std::string name, SourcePos pos = {});

}  // namespace term

/// Structural equality ignoring positions and Fmap typing.
bool same_term(const Term& a, const Term& b);

/// Minimal-parenthesis rendering that parses back to the same term.
std::string pretty(const Term& t);

/// Every label occurring syntactically in `t`.
void collect_labels(const Term& t, std::vector<Label>& out);

}  // namespace mcsp
