#pragma once

// Trace semantics: membership, bounded enumeration and refinement.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcsp/lts.hpp"
#include "mcsp/process.hpp"

namespace mcsp {

struct Trace {
  std::vector<Label> labels;
  std::optional<Value> outcome;

  friend bool operator==(const Trace& a, const Trace& b) = default;
  /// Length first, then labels lexicographically, then outcome (none first).
  friend bool operator<(const Trace& a, const Trace& b);
  std::string to_string() const;
};

using TraceSet = std::set<Trace>;

/// Result of a refinement check. A failure always carries a counterexample
/// that is a genuine behaviour of the refining side and not of the other.
template <class W>
struct Verdict {
  bool holds = true;
  /// Holds: every behaviour was examined. Fails: always true.
  bool definitive = false;
  std::size_t depth_checked = 0;
  std::optional<W> counterexample;

  static Verdict pass(bool definitive, std::size_t depth) { return {true, definitive, depth, {}}; }
  static Verdict fail(W w, std::size_t depth) { return {false, true, depth, std::move(w)}; }
};

using TraceVerdict = Verdict<Trace>;

/// Derivable with at most `tau_fuel` internal steps along the derivation.
bool is_trace(const Process& p, const Trace& t, std::size_t tau_fuel);

/// All traces using at most `depth` external plus internal steps.
TraceSet trace_set(const Process& p, std::size_t depth);

/// Same accounting as the direct enumerator, computed on the graph. Every
/// state reachable within `depth` steps must have been expanded.
TraceSet trace_set(const Lts& lts, std::size_t depth);

/// Lts sufficient for trace_set(lts, depth) unless `max_states` is hit.
Lts explore_for_depth(const Process& p, const Env* env, std::size_t depth,
                      std::size_t max_states = 100000);

/// Does every trace of `q` belong to `p`? Exact when both graphs are
/// complete; otherwise label sequences up to `depth` are examined.
TraceVerdict trace_refines(const Lts& p, const Lts& q, std::size_t depth);
TraceVerdict trace_refines(const Process& p, const Process& q, std::size_t depth,
                           ExploreLimits limits = {});

std::pair<TraceVerdict, TraceVerdict> trace_equiv(const Lts& p, const Lts& q, std::size_t depth);
std::pair<TraceVerdict, TraceVerdict> trace_equiv(const Process& p, const Process& q,
                                                  std::size_t depth, ExploreLimits limits = {});

/// Map each outcome through `f`.
TraceSet map_outcomes(const TraceSet& s, const std::function<Value(const Value&)>& f);

}  // namespace mcsp
