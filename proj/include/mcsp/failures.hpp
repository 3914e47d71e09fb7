#pragma once

// Stable failures and divergences.

#include <set>
#include <string>
#include <vector>

#include "mcsp/lts.hpp"
#include "mcsp/traces.hpp"

namespace mcsp {

/// No internal choice. Terminated processes are stable.
bool is_stable(const Process& p);
std::set<Label> initials(const Process& p);

/// Some stable process reachable by at most `tau_fuel` internal steps has
/// initials disjoint from `refused`.
bool refuses(const Process& p, const std::set<Label>& refused, std::size_t tau_fuel);

/// The stable witness `witness` is reachable after `labels`. Any label set
/// disjoint from `initials` is refused there.
struct StableFailure {
  std::vector<Label> labels;
  std::set<Label> initials;
  StateId witness = 0;

  friend bool operator==(const StableFailure&, const StableFailure&) = default;
  friend bool operator<(const StableFailure& a, const StableFailure& b);
};

struct FailureSet {
  std::set<StableFailure> failures;
  bool partial = false;
};

FailureSet stable_failures(const Lts& lts, std::size_t depth);

struct Divergence {
  enum class Mode { Definitive, Bounded };
  std::vector<Label> labels;
  Mode mode = Mode::Definitive;

  friend bool operator==(const Divergence&, const Divergence&) = default;
  friend bool operator<(const Divergence& a, const Divergence& b);
};

std::set<Divergence> divergences_of(const Lts& lts, std::size_t depth);

using DivergenceVerdict = Verdict<std::vector<Label>>;
using FailureVerdict = Verdict<StableFailure>;

struct FdiVerdict {
  TraceVerdict traces;
  DivergenceVerdict divergences;
  FailureVerdict failures;

  bool holds() const { return traces.holds && divergences.holds && failures.holds; }
  bool definitive() const;
  /// "traces", "divergences", "failures", or empty when all hold.
  std::string failing_component() const;
};

DivergenceVerdict refines_fdi1(const Lts& p, const Lts& q, std::size_t depth);
FailureVerdict refines_fdi2(const Lts& p, const Lts& q, std::size_t depth);
FdiVerdict refines_fdi(const Lts& p, const Lts& q, std::size_t depth);
std::pair<FdiVerdict, FdiVerdict> equiv_fdi(const Lts& p, const Lts& q, std::size_t depth);

FdiVerdict refines_fdi(const Process& p, const Process& q, std::size_t depth,
                       ExploreLimits limits = {});

}  // namespace mcsp
