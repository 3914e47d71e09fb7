#pragma once

// Random process generation and executable algebraic laws.

#include <cstdint>
#include <string>
#include <vector>

#include "mcsp/failures.hpp"
#include "mcsp/lang.hpp"
#include "mcsp/traces.hpp"

namespace mcsp {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_ast_nodes = 14;  // per definition
  std::vector<Label> labels{Label("a"), Label("b"), Label("c")};
  std::vector<Choice> value_choices = default_value_choices();
  double recursion_probability = 0.25;
  std::size_t max_definitions = 4;
  /// Definitions are named prefix0, prefix1, ...; the root is prefix0.
  std::string name_prefix = "P";
  /// Return type of the root; drawn from value_choices when empty.
  std::optional<Choice> root_type;

  static std::vector<Choice> default_value_choices();
};

/// Deterministic in the whole config. The result passes check_env.
Env gen_process(const GenConfig& cfg);
std::string root_name(const GenConfig& cfg);

struct LawFailure {
  std::uint64_t seed = 0;
  std::string inputs;   // printed definitions
  std::string witness;  // trace, failure or verdict description
};

struct LawReport {
  std::string law;
  std::size_t trials = 0;
  std::vector<LawFailure> failures;
  /// Only bounded evidence was available for some trial.
  bool bounded = false;

  bool passed() const { return failures.empty(); }
  /// Appends a trial's outcome, tagging its failures with `seed` and `inputs`.
  void merge(const LawReport& trial, std::uint64_t seed, const std::string& inputs);
};

/// traces(p [] q) equals traces(q [] p) with outcomes swapped.
LawReport check_ext_choice_comm(const Process& p, const Process& q, std::size_t depth);
/// The same statement in the stable-failures sense: mutual refinement of
/// p [] q and fmap swap (q [] p). Reported separately from the trace law.
LawReport check_ext_choice_comm_failures(const Process& p, const Process& q, std::size_t depth,
                                         ExploreLimits limits = {});
/// Reflexivity, transitivity on the given triple, and mutual refinement
/// implying equivalence.
LawReport check_partial_order(const Lts& p, const Lts& q, const Lts& r, std::size_t depth);
/// Non-terminating traces are closed under initial segments.
LawReport check_prefix_closure(const Process& p, std::size_t depth);
/// traces(addTick a p) = traces(p) plus ([], a). `p` must be a node.
LawReport check_add_tick_trace_effect(const Process& p, const Value& a, std::size_t depth);
/// traces at depth d are included in traces at depth d + 1.
LawReport check_trace_monotone(const Process& p, std::size_t depth);
/// The direct enumerator and the graph computation agree.
LawReport check_lts_oracle(const Process& p, const Env& env, std::size_t depth);

/// Seeded suite over generated inputs; trial i uses seed base_seed + i, so
/// any failure is replayable from (law, seed).
LawReport run_law(const std::string& law, std::size_t trials, std::uint64_t base_seed,
                  std::size_t depth);
std::vector<std::string> law_names();

}  // namespace mcsp
