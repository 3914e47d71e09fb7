#pragma once

// Explicit transition systems extracted from processes. States are identified
// by the printed canonical form of their terms.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcsp/lang.hpp"
#include "mcsp/process.hpp"

namespace mcsp {

using StateId = std::size_t;

/// Normal form used for state identity: fmap id and fmaps out of uninhabited
/// sets vanish, compositions of id/inl/inr/swap are merged, fmaps and
/// addTick applied to RETURN are evaluated, binds of RETURN select their
/// branch, and bind branches are sorted. Idempotent.
Term canonicalize(const Term& t, const Env& env);
Term canonicalize(const Term& t);

struct Action {
  enum class Kind { Visible, Tau, Tick };
  Kind kind = Kind::Tau;
  Label label;  // Visible
  Value value;  // Tick

  static Action visible(Label l) { return {Kind::Visible, std::move(l), {}}; }
  static Action tau() { return {Kind::Tau, {}, {}}; }
  static Action tick(Value v) { return {Kind::Tick, {}, std::move(v)}; }

  friend bool operator==(const Action& a, const Action& b);
  friend bool operator<(const Action& a, const Action& b);
  std::string to_string() const;
};

struct Transition {
  StateId from = 0;
  Action action;
  std::optional<StateId> to;  // empty for Tick: the edge ends in a TermSink

  friend bool operator<(const Transition& a, const Transition& b);
};

struct LtsState {
  Term term;
  std::string key;
  std::optional<Value> terminated;
  /// Successors computed. A state is either fully expanded or has no edges.
  bool expanded = false;
  std::size_t depth = 0;
  Process process;
};

struct ExploreLimits {
  std::size_t max_states = 10000;
  std::size_t max_depth = 1000;
};

class Lts {
 public:
  const Choice& ret() const { return ret_; }
  StateId initial() const { return 0; }
  const std::vector<LtsState>& states() const { return states_; }
  const LtsState& state(StateId s) const;
  const std::vector<Transition>& out(StateId s) const { return out_.at(s); }
  std::vector<Transition> transitions() const;
  bool complete() const { return complete_; }
  /// On a τ-cycle (self-loops included).
  bool diverges(StateId s) const { return on_tau_cycle_.at(s); }
  bool stable(StateId s) const;
  std::set<Label> initials(StateId s) const;
  std::set<Value> tick_values(StateId s) const;
  std::set<Label> alphabet() const;

 private:
  friend Lts build_lts(const Process&, const Env*, ExploreLimits);

  Choice ret_;
  std::vector<LtsState> states_;
  std::vector<std::vector<Transition>> out_;
  std::vector<bool> on_tau_cycle_;
  bool complete_ = true;
};

Lts build_lts(const Process& root, const Env* env, ExploreLimits limits = {});
Lts build_lts(const Env& env, std::string_view name, ExploreLimits limits = {});

/// A set of states closed under τ. `exact` is false when the closure reached
/// a state whose successors were not computed.
struct StateSet {
  std::vector<StateId> states;  // sorted
  bool exact = true;

  bool empty() const { return states.empty(); }
  friend bool operator<(const StateSet& a, const StateSet& b) { return a.states < b.states; }
  friend bool operator==(const StateSet& a, const StateSet& b) { return a.states == b.states; }
};

StateSet tau_closure(const Lts& lts, std::vector<StateId> seeds);
StateSet after(const Lts& lts, const StateSet& from, const Label& l);
StateSet after(const Lts& lts, const std::vector<Label>& labels);
std::set<Label> initials(const Lts& lts, const StateSet& s);
bool diverges(const Lts& lts, const StateSet& s);

struct StableStates {
  std::vector<StateId> states;
  bool partial = false;
};

StableStates stable_states_after(const Lts& lts, const std::vector<Label>& labels);

std::string to_dot(const Lts& lts);

}  // namespace mcsp
