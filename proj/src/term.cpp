#include "mcsp/term.hpp"

namespace mcsp {

namespace {

Term make(TermKind kind, SourcePos pos) {
  auto n = std::make_shared<TermNode>();
  n->kind = kind;
  n->pos = pos;
  return n;
}

// Binding strength, loosest first. Matches the parser's grammar levels.
enum Level { kBind = 0, kInt = 1, kExt = 2, kPrefix = 3, kAtom = 4 };

Level level_of(const Term& t) {
  switch (t->kind) {
    case TermKind::Bind: return kBind;
    case TermKind::IntChoice: return kInt;
    case TermKind::ExtChoice: return kExt;
    case TermKind::Prefix:
    case TermKind::Fmap:
    case TermKind::AddTick: return kPrefix;
    default: return kAtom;
  }
}

std::string print(const Term& t, Level need);

std::string wrap(const Term& t, Level need) {
  std::string s = print(t, need);
  return level_of(t) < need ? "(" + s + ")" : s;
}

std::string print(const Term& t, Level) {
  switch (t->kind) {
    case TermKind::Stop: return "STOP";
    case TermKind::Skip: return "SKIP " + t->value.to_string();
    case TermKind::Return: return "RETURN " + t->value.to_string();
    case TermKind::Ref: return t->name;
    case TermKind::Prefix: return t->label.name() + " -> " + wrap(t->kids[0], kPrefix);
    case TermKind::Fmap: {
      std::string fn = t->fn == ValueMap::Name::Custom && t->typed_fn
                           ? t->typed_fn->display()
                           : fn_name(t->fn);
      return "fmap " + fn + " " + wrap(t->kids[0], kPrefix);
    }
    case TermKind::AddTick:
      return "addTick " + t->value.to_string() + " " + wrap(t->kids[0], kPrefix);
    case TermKind::ExtChoice:
      // right-associative: the left operand must bind tighter
      return wrap(t->kids[0], kPrefix) + " [] " + wrap(t->kids[1], kExt);
    case TermKind::IntChoice:
      return wrap(t->kids[0], kExt) + " |~| " + wrap(t->kids[1], kInt);
    case TermKind::Bind: {
      std::string out = wrap(t->kids[0], kBind) + " >>= { ";
      for (std::size_t i = 0; i < t->branches.size(); ++i) {
        if (i) out += " ; ";
        out += t->branches[i].pattern.to_string() + " -> " + wrap(t->branches[i].body, kBind);
      }
      return out + " }";
    }
  }
  return "?";
}

}  // namespace

namespace term {

Term stop(SourcePos pos) { return make(TermKind::Stop, pos); }

Term skip(Value v, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Skip, pos));
  n->value = std::move(v);
  return n;
}

Term ret(Value v, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Return, pos));
  n->value = std::move(v);
  return n;
}

Term prefix(Label l, Term cont, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Prefix, pos));
  n->label = std::move(l);
  n->kids = {std::move(cont)};
  return n;
}

Term ext_choice(Term p, Term q, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::ExtChoice, pos));
  n->kids = {std::move(p), std::move(q)};
  return n;
}

Term int_choice(Term p, Term q, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::IntChoice, pos));
  n->kids = {std::move(p), std::move(q)};
  return n;
}

Term bind(Term scrutinee, std::vector<Branch> branches, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Bind, pos));
  n->kids = {std::move(scrutinee)};
  n->branches = std::move(branches);
  return n;
}

Term fmap(ValueMap::Name fn, Term p, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Fmap, pos));
  n->fn = fn;
  n->kids = {std::move(p)};
  return n;
}

Term fmap(const ValueMap& fn, Term p) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Fmap, {}));
  n->fn = fn.name();
  n->typed_fn = std::make_shared<const ValueMap>(fn);
  n->kids = {std::move(p)};
  return n;
}

Term add_tick(Value v, Term p, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::AddTick, pos));
  n->value = std::move(v);
  n->kids = {std::move(p)};
  return n;
}

Term ref(std::string name, SourcePos pos) {
  auto n = std::const_pointer_cast<TermNode>(make(TermKind::Ref, pos));
  n->name = std::move(name);
  return n;
}

}  // namespace term

bool same_term(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Stop:
      return true;
    case TermKind::Skip:
    case TermKind::Return:
      return a->value == b->value;
    case TermKind::Ref:
      return a->name == b->name;
    case TermKind::Prefix:
      if (a->label != b->label) return false;
      break;
    case TermKind::Fmap:
      if (a->fn != b->fn) return false;
      if (a->fn == ValueMap::Name::Custom &&
          (!a->typed_fn || !b->typed_fn || a->typed_fn->display() != b->typed_fn->display()))
        return false;
      break;
    case TermKind::AddTick:
      if (a->value != b->value) return false;
      break;
    case TermKind::Bind:
      if (a->branches.size() != b->branches.size()) return false;
      for (std::size_t i = 0; i < a->branches.size(); ++i)
        if (a->branches[i].pattern != b->branches[i].pattern ||
            !same_term(a->branches[i].body, b->branches[i].body))
          return false;
      break;
    case TermKind::ExtChoice:
    case TermKind::IntChoice:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!same_term(a->kids[i], b->kids[i])) return false;
  return true;
}

std::string pretty(const Term& t) { return print(t, kBind); }

void collect_labels(const Term& t, std::vector<Label>& out) {
  if (t->kind == TermKind::Prefix) out.push_back(t->label);
  for (const auto& k : t->kids) collect_labels(k, out);
  for (const auto& b : t->branches) collect_labels(b.body, out);
}

}  // namespace mcsp
