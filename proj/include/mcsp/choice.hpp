#pragma once

// Finite-set universe used for choice indices and return values.

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

/// An event name. Ordered lexicographically.
class Label {
 public:
  Label() = default;
  explicit Label(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  std::string name_;
};

enum class ChoiceKind { Empty, Unit, Bool, Fin, Union, Named };

/// Code for a finite set. Immutable, shared by reference.
class Choice {
 public:
  Choice();  // Empty

  static Choice empty();
  static Choice unit();
  static Choice boolean();
  static Choice fin(std::size_t n);
  static Choice sum(Choice left, Choice right);
  /// Atoms must be non-empty and pairwise distinct.
  static Choice named(std::string name, std::vector<std::string> atoms);

  ChoiceKind kind() const { return node_->kind; }
  std::size_t cardinality() const { return node_->cardinality; }
  bool inhabited() const { return cardinality() != 0; }

  std::size_t fin_size() const { return node_->n; }
  const Choice& left() const;
  const Choice& right() const;
  const std::string& set_name() const { return node_->name; }
  const std::vector<std::string>& atoms() const { return node_->atoms; }

  /// Structural equality. The display name of a Named set is ignored.
  friend bool operator==(const Choice& a, const Choice& b);

  /// DSL spelling, e.g. "{u, w} + Bool".
  std::string to_string() const;

 private:
  struct Node {
    ChoiceKind kind = ChoiceKind::Empty;
    std::size_t n = 0;
    std::size_t cardinality = 0;
    std::vector<Choice> parts;
    std::string name;
    std::vector<std::string> atoms;
  };
  explicit Choice(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Both uninhabited sets are interchangeable as return types: no value can
/// ever be produced, so only structure matters.
bool compatible(const Choice& a, const Choice& b);

enum class ValueKind { Unit, Bool, Fin, InL, InR, Atom };

/// An element of some Choice. Values are untyped trees; `inhabits` relates
/// them to a Choice.
class Value {
 public:
  Value() = default;  // tt

  static Value unit() { return Value(); }
  static Value boolean(bool b);
  static Value fin(std::size_t i);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value atom(std::string name);

  ValueKind kind() const { return kind_; }
  bool as_bool() const { return index_ != 0; }
  std::size_t index() const { return index_; }
  const std::string& atom_name() const { return atom_; }
  /// Payload of an injection.
  const Value& inner() const;

  friend bool operator==(const Value& a, const Value& b);
  /// Structural total order: constructor tag first, then payload. For a
  /// fixed Choice this agrees with `enumerate` except for Named atoms, which
  /// compare by name.
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  /// Untyped rendering ("tt", "true", "2", "inl u", "ok").
  std::string to_string() const;

 private:
  ValueKind kind_ = ValueKind::Unit;
  std::size_t index_ = 0;
  std::string atom_;
  std::shared_ptr<const Value> inner_;
};

bool inhabits(const Choice& c, const Value& v);

/// Throws TypeMismatch when `v` does not inhabit `c`.
void require_inhabits(const Choice& c, const Value& v, const char* what);

/// All elements in canonical order: Union left block first, Named in
/// declaration order, Fin ascending, Bool false before true.
std::vector<Value> enumerate(const Choice& c);

/// Position of `v` within enumerate(c).
std::size_t index_of(const Choice& c, const Value& v);

bool eq_elem(const Choice& c, const Value& x, const Value& y);
std::string render_elem(const Choice& c, const Value& x);

/// InL v <-> InR v. Throws TypeMismatch for non-injections.
Value swap_union(const Value& v);

/// Total function between two Choices. The four named maps are the ones the
/// DSL can spell; `tabulate` builds anything else from a callable.
class ValueMap {
 public:
  enum class Name { Id, Inl, Inr, Swap, Custom };

  static ValueMap identity(Choice c);
  /// a -> a + b
  static ValueMap inl(Choice a, Choice b);
  /// b -> a + b
  static ValueMap inr(Choice a, Choice b);
  /// a + b -> b + a
  static ValueMap swap(Choice a, Choice b);
  /// Validates totality and range against enumerate(from).
  static ValueMap tabulate(std::string display, Choice from, Choice to,
                           const std::function<Value(const Value&)>& f);
  /// The unique map out of an uninhabited set.
  static ValueMap vacuous(Choice from, Choice to);

  Name name() const { return name_; }
  const std::string& display() const { return display_; }
  const Choice& from() const { return from_; }
  const Choice& to() const { return to_; }

  Value operator()(const Value& v) const;

  /// this ∘ inner, when the composite is again one of the named maps.
  std::optional<ValueMap> compose_after(const ValueMap& inner) const;

 private:
  ValueMap(Name name, std::string display, Choice from, Choice to)
      : name_(name), display_(std::move(display)), from_(std::move(from)),
        to_(std::move(to)) {}

  Name name_;
  std::string display_;
  Choice from_;
  Choice to_;
  std::shared_ptr<const std::vector<Value>> table_;  // Custom only
};

std::string fn_name(ValueMap::Name n);

/// Total map out of a Choice, stored in enumerate order.
template <class T>
class ChoiceMap {
 public:
  ChoiceMap() = default;

  ChoiceMap(Choice domain, std::vector<T> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.cardinality())
      throw TypeMismatch("map is not total on " + domain_.to_string());
  }

  template <class F>
  static ChoiceMap build(Choice domain, F&& f) {
    std::vector<T> out;
    auto elems = enumerate(domain);
    out.reserve(elems.size());
    for (const auto& e : elems) out.push_back(f(e));
    return ChoiceMap(std::move(domain), std::move(out));
  }

  const Choice& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  const T& at_index(std::size_t i) const { return values_.at(i); }
  const T& at(const Value& v) const { return values_.at(index_of(domain_, v)); }
  const std::vector<T>& values() const { return values_; }

 private:
  Choice domain_;
  std::vector<T> values_;
};

}  // namespace mcsp
