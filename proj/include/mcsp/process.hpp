#pragma once

// Monadic processes: a process has either terminated with a value or offers
// external choices (labelled), internal choices and ✓-events carrying return
// values. Continuations are deferred and memoized.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

#include "mcsp/choice.hpp"
#include "mcsp/term.hpp"

namespace mcsp {

class Process;
class ProcessNode;

/// Suspended process. Forcing runs the thunk at most once, even when several
/// threads force concurrently; every caller observes the same result.
class Deferred {
 public:
  Deferred(Choice ret, Term term, std::function<Process()> thunk);
  /// Already evaluated.
  explicit Deferred(const Process& p);

  const Process& force() const;
  const Choice& ret() const { return cell_->ret; }
  /// Display term, available without forcing.
  const Term& term() const { return cell_->term; }

 private:
  struct Cell {
    Choice ret;
    Term term;
    std::function<Process()> thunk;
    std::once_flag once;
    std::shared_ptr<const Process> value;
  };
  std::shared_ptr<Cell> cell_;
};

/// One-step view of a non-terminated process.
class ProcessNode {
 public:
  ProcessNode(ChoiceMap<Label> labels, ChoiceMap<Deferred> ext, ChoiceMap<Deferred> internal,
              ChoiceMap<Value> ticks);

  const Choice& ext_index() const { return ext_.domain(); }
  const ChoiceMap<Label>& labels() const { return labels_; }
  const ChoiceMap<Deferred>& ext() const { return ext_; }
  const Choice& int_index() const { return int_.domain(); }
  const ChoiceMap<Deferred>& internal() const { return int_; }
  const Choice& tick_index() const { return ticks_.domain(); }
  const ChoiceMap<Value>& ticks() const { return ticks_; }

 private:
  ChoiceMap<Label> labels_;
  ChoiceMap<Deferred> ext_;
  ChoiceMap<Deferred> int_;
  ChoiceMap<Value> ticks_;
};

/// Immutable process over return Choice `ret()`. Cheap to copy.
class Process {
 public:
  static Process terminated(Choice ret, Value v);
  /// Validates that every tick value inhabits `ret`.
  static Process node(Choice ret, ProcessNode node, Term term);

  const Choice& ret() const { return data_->ret; }
  bool is_terminated() const { return std::holds_alternative<Value>(data_->body); }
  const Value& value() const;
  const ProcessNode& node() const;
  const Term& term() const { return data_->term; }
  std::string display() const { return pretty(term()); }

  /// Same behaviour, different display term.
  Process with_term(Term t) const;
  /// Reinterprets a process over an uninhabited Choice as one over another
  /// uninhabited Choice; no value can be observed on either side.
  Process retag(Choice ret) const;

 private:
  struct Data {
    Choice ret;
    std::variant<Value, ProcessNode> body;
    Term term;
  };
  explicit Process(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

Process stop(Choice c);
/// A node with a single ✓-event returning `a`; distinct from terminated(a).
Process skip(Choice c, Value a);
Process prefix(Label l, Deferred p);
/// Return Choice is p.ret() + q.ret().
Process ext_choice(const Process& p, const Process& q);
/// Keeps the option to terminate with `a` across internal steps; an
/// external step drops it. Terminated arguments are returned unchanged.
Process add_timed_tick(const Value& a, const Process& p);
/// ✓-events for inl a (Bool true) and inr b (Bool false).
Process two_tick(Choice c0, Value a, Choice c1, Value b);
Process int_choice(Deferred p, Deferred q);
Process int_choice(const Process& p, const Process& q);
Process fmap(const ValueMap& f, const Process& p);
Deferred fmap(const ValueMap& f, const Deferred& p);
/// ✓-events of `p` become τ-steps into the continuation for their value.
Process bind(const Process& p, const Choice& ret, const ChoiceMap<Deferred>& k);

}  // namespace mcsp
