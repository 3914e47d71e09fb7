#include "mcsp/choice.hpp"

#include <algorithm>
#include <set>

namespace mcsp {

Choice::Choice() : Choice(empty()) {}

Choice Choice::empty() {
  static const auto node = std::make_shared<const Node>();
  return Choice(node);
}

Choice Choice::unit() {
  static const auto node = [] {
    Node n;
    n.kind = ChoiceKind::Unit;
    n.cardinality = 1;
    return std::make_shared<const Node>(std::move(n));
  }();
  return Choice(node);
}

Choice Choice::boolean() {
  static const auto node = [] {
    Node n;
    n.kind = ChoiceKind::Bool;
    n.cardinality = 2;
    return std::make_shared<const Node>(std::move(n));
  }();
  return Choice(node);
}

Choice Choice::fin(std::size_t n) {
  if (n == 0) throw Error("Fin n requires a positive size");
  Node node;
  node.kind = ChoiceKind::Fin;
  node.n = n;
  node.cardinality = n;
  return Choice(std::make_shared<const Node>(std::move(node)));
}

Choice Choice::sum(Choice left, Choice right) {
  Node node;
  node.kind = ChoiceKind::Union;
  node.cardinality = left.cardinality() + right.cardinality();
  node.parts = {std::move(left), std::move(right)};
  return Choice(std::make_shared<const Node>(std::move(node)));
}

Choice Choice::named(std::string name, std::vector<std::string> atoms) {
  if (atoms.empty()) throw Error("named set needs at least one atom");
  std::set<std::string> seen;
  for (const auto& a : atoms)
    if (!seen.insert(a).second) throw Error("duplicate atom '" + a + "'");
  Node node;
  node.kind = ChoiceKind::Named;
  node.cardinality = atoms.size();
  node.name = std::move(name);
  node.atoms = std::move(atoms);
  return Choice(std::make_shared<const Node>(std::move(node)));
}

const Choice& Choice::left() const {
  if (kind() != ChoiceKind::Union) throw TypeMismatch(to_string() + " is not a union");
  return node_->parts[0];
}

const Choice& Choice::right() const {
  if (kind() != ChoiceKind::Union) throw TypeMismatch(to_string() + " is not a union");
  return node_->parts[1];
}

bool operator==(const Choice& a, const Choice& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ChoiceKind::Empty:
    case ChoiceKind::Unit:
    case ChoiceKind::Bool:
      return true;
    case ChoiceKind::Fin:
      return a.fin_size() == b.fin_size();
    case ChoiceKind::Union:
      return a.left() == b.left() && a.right() == b.right();
    case ChoiceKind::Named:
      return a.atoms() == b.atoms();
  }
  return false;
}

std::string Choice::to_string() const {
  switch (kind()) {
    case ChoiceKind::Empty: return "Empty";
    case ChoiceKind::Unit: return "Unit";
    case ChoiceKind::Bool: return "Bool";
    case ChoiceKind::Fin: return "Fin " + std::to_string(fin_size());
    case ChoiceKind::Union: {
      // '+' is right-associative, so only a left union needs parentheses.
      std::string l = left().to_string();
      if (left().kind() == ChoiceKind::Union) l = "(" + l + ")";
      return l + " + " + right().to_string();
    }
    case ChoiceKind::Named: {
      std::string out = "{";
      for (std::size_t i = 0; i < atoms().size(); ++i) {
        if (i) out += ", ";
        out += atoms()[i];
      }
      return out + "}";
    }
  }
  return "?";
}

bool compatible(const Choice& a, const Choice& b) {
  return a == b || (!a.inhabited() && !b.inhabited());
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = ValueKind::Bool;
  v.index_ = b ? 1 : 0;
  return v;
}

Value Value::fin(std::size_t i) {
  Value v;
  v.kind_ = ValueKind::Fin;
  v.index_ = i;
  return v;
}

Value Value::inl(Value inner) {
  Value v;
  v.kind_ = ValueKind::InL;
  v.inner_ = std::make_shared<const Value>(std::move(inner));
  return v;
}

Value Value::inr(Value inner) {
  Value v;
  v.kind_ = ValueKind::InR;
  v.inner_ = std::make_shared<const Value>(std::move(inner));
  return v;
}

Value Value::atom(std::string name) {
  Value v;
  v.kind_ = ValueKind::Atom;
  v.atom_ = std::move(name);
  return v;
}

const Value& Value::inner() const {
  if (!inner_) throw TypeMismatch(to_string() + " is not an injection");
  return *inner_;
}

bool operator==(const Value& a, const Value& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  switch (a.kind_) {
    case ValueKind::Unit:
      return std::strong_ordering::equal;
    case ValueKind::Bool:
    case ValueKind::Fin:
      return a.index_ <=> b.index_;
    case ValueKind::InL:
    case ValueKind::InR:
      return *a.inner_ <=> *b.inner_;
    case ValueKind::Atom:
      return a.atom_.compare(b.atom_) <=> 0;
  }
  return std::strong_ordering::equal;
}

std::string Value::to_string() const {
  switch (kind_) {
    case ValueKind::Unit: return "tt";
    case ValueKind::Bool: return as_bool() ? "true" : "false";
    case ValueKind::Fin: return std::to_string(index_);
    case ValueKind::InL: return "inl " + inner_->to_string();
    case ValueKind::InR: return "inr " + inner_->to_string();
    case ValueKind::Atom: return atom_;
  }
  return "?";
}

bool inhabits(const Choice& c, const Value& v) {
  switch (c.kind()) {
    case ChoiceKind::Empty:
      return false;
    case ChoiceKind::Unit:
      return v.kind() == ValueKind::Unit;
    case ChoiceKind::Bool:
      return v.kind() == ValueKind::Bool;
    case ChoiceKind::Fin:
      return v.kind() == ValueKind::Fin && v.index() < c.fin_size();
    case ChoiceKind::Union:
      if (v.kind() == ValueKind::InL) return inhabits(c.left(), v.inner());
      if (v.kind() == ValueKind::InR) return inhabits(c.right(), v.inner());
      return false;
    case ChoiceKind::Named:
      return v.kind() == ValueKind::Atom &&
             std::find(c.atoms().begin(), c.atoms().end(), v.atom_name()) != c.atoms().end();
  }
  return false;
}

void require_inhabits(const Choice& c, const Value& v, const char* what) {
  if (!inhabits(c, v))
    throw TypeMismatch(std::string(what) + ": value '" + v.to_string() +
                       "' does not inhabit " + c.to_string());
}

std::vector<Value> enumerate(const Choice& c) {
  std::vector<Value> out;
  out.reserve(c.cardinality());
  switch (c.kind()) {
    case ChoiceKind::Empty:
      break;
    case ChoiceKind::Unit:
      out.push_back(Value::unit());
      break;
    case ChoiceKind::Bool:
      out.push_back(Value::boolean(false));
      out.push_back(Value::boolean(true));
      break;
    case ChoiceKind::Fin:
      for (std::size_t i = 0; i < c.fin_size(); ++i) out.push_back(Value::fin(i));
      break;
    case ChoiceKind::Union:
      for (auto& v : enumerate(c.left())) out.push_back(Value::inl(std::move(v)));
      for (auto& v : enumerate(c.right())) out.push_back(Value::inr(std::move(v)));
      break;
    case ChoiceKind::Named:
      for (const auto& a : c.atoms()) out.push_back(Value::atom(a));
      break;
  }
  return out;
}

std::size_t index_of(const Choice& c, const Value& v) {
  require_inhabits(c, v, "index_of");
  switch (c.kind()) {
    case ChoiceKind::Unit:
      return 0;
    case ChoiceKind::Bool:
    case ChoiceKind::Fin:
      return v.index();
    case ChoiceKind::Union:
      if (v.kind() == ValueKind::InL) return index_of(c.left(), v.inner());
      return c.left().cardinality() + index_of(c.right(), v.inner());
    case ChoiceKind::Named:
      return static_cast<std::size_t>(
          std::find(c.atoms().begin(), c.atoms().end(), v.atom_name()) - c.atoms().begin());
    case ChoiceKind::Empty:
      break;
  }
  throw TypeMismatch("Empty has no elements");
}

bool eq_elem(const Choice& c, const Value& x, const Value& y) {
  require_inhabits(c, x, "eq_elem");
  require_inhabits(c, y, "eq_elem");
  return x == y;
}

std::string render_elem(const Choice& c, const Value& x) {
  require_inhabits(c, x, "render_elem");
  return x.to_string();
}

Value swap_union(const Value& v) {
  if (v.kind() == ValueKind::InL) return Value::inr(v.inner());
  if (v.kind() == ValueKind::InR) return Value::inl(v.inner());
  throw TypeMismatch("swap: '" + v.to_string() + "' is not a union element");
}

ValueMap ValueMap::identity(Choice c) {
  Choice to = c;
  return ValueMap(Name::Id, "id", std::move(c), std::move(to));
}

ValueMap ValueMap::inl(Choice a, Choice b) {
  Choice to = Choice::sum(a, std::move(b));
  return ValueMap(Name::Inl, "inl", std::move(a), std::move(to));
}

ValueMap ValueMap::inr(Choice a, Choice b) {
  Choice to = Choice::sum(std::move(a), b);
  return ValueMap(Name::Inr, "inr", std::move(b), std::move(to));
}

ValueMap ValueMap::swap(Choice a, Choice b) {
  Choice from = Choice::sum(a, b);
  Choice to = Choice::sum(std::move(b), std::move(a));
  return ValueMap(Name::Swap, "swap", std::move(from), std::move(to));
}

ValueMap ValueMap::tabulate(std::string display, Choice from, Choice to,
                            const std::function<Value(const Value&)>& f) {
  std::vector<Value> table;
  for (const auto& v : enumerate(from)) {
    Value out = f(v);
    require_inhabits(to, out, "tabulate");
    table.push_back(std::move(out));
  }
  ValueMap m(Name::Custom, std::move(display), std::move(from), std::move(to));
  m.table_ = std::make_shared<const std::vector<Value>>(std::move(table));
  return m;
}

ValueMap ValueMap::vacuous(Choice from, Choice to) {
  if (from.inhabited()) throw TypeMismatch("vacuous map needs an uninhabited source");
  return tabulate("efq", std::move(from), std::move(to),
                  [](const Value& v) -> Value { return v; });
}

Value ValueMap::operator()(const Value& v) const {
  require_inhabits(from_, v, display_.c_str());
  switch (name_) {
    case Name::Id: return v;
    case Name::Inl: return Value::inl(v);
    case Name::Inr: return Value::inr(v);
    case Name::Swap: return swap_union(v);
    case Name::Custom: return table_->at(index_of(from_, v));
  }
  return v;
}

std::optional<ValueMap> ValueMap::compose_after(const ValueMap& inner) const {
  if (name_ == Name::Custom || inner.name_ == Name::Custom) return std::nullopt;
  if (name_ == Name::Id) return inner;
  if (inner.name_ == Name::Id) return *this;
  if (name_ != Name::Swap) return std::nullopt;
  // swap : x + y -> y + x applied after inner : s -> x + y
  const Choice& x = to_.right();
  const Choice& y = to_.left();
  switch (inner.name_) {
    case Name::Swap: return identity(inner.from_);
    case Name::Inl: return inr(y, x);  // s = x  ->  y + x
    case Name::Inr: return inl(y, x);  // s = y  ->  y + x
    default: return std::nullopt;
  }
}

std::string fn_name(ValueMap::Name n) {
  switch (n) {
    case ValueMap::Name::Id: return "id";
    case ValueMap::Name::Inl: return "inl";
    case ValueMap::Name::Inr: return "inr";
    case ValueMap::Name::Swap: return "swap";
    case ValueMap::Name::Custom: return "custom";
  }
  return "?";
}

}  // namespace mcsp
