#pragma once

// Joint subset exploration of two transition systems, shared by the
// refinement checks. Nodes of one level are visited in lexicographic label
// order, so the first candidate found per level is minimal in its level.

#include <map>
#include <set>
#include <vector>

#include "mcsp/lts.hpp"

namespace mcsp::detail {

struct PairNode {
  std::vector<Label> labels;
  StateSet p;
  StateSet q;
};

struct WalkResult {
  std::size_t depth_checked = 0;
  bool exhausted = false;  // no unvisited node remains
  bool stopped = false;    // the visitor asked to stop
};

/// `visit(level)` returns true to stop. Only label sequences that `q` can
/// perform are followed. Both graphs complete: runs until no new subset pair
/// appears. Otherwise stops after level `depth`.
template <class Visit>
WalkResult walk_pairs(const Lts& p, const Lts& q, std::size_t depth, Visit&& visit) {
  bool bounded = !p.complete() || !q.complete();
  std::set<std::pair<std::vector<StateId>, std::vector<StateId>>> seen;
  std::vector<PairNode> level{
      PairNode{{}, tau_closure(p, {p.initial()}), tau_closure(q, {q.initial()})}};
  seen.insert({level[0].p.states, level[0].q.states});
  WalkResult r;
  for (std::size_t k = 0;; ++k) {
    r.depth_checked = k;
    if (visit(static_cast<const std::vector<PairNode>&>(level))) {
      r.stopped = true;
      return r;
    }
    if (bounded && k >= depth) return r;
    std::vector<PairNode> next;
    for (const auto& node : level) {
      for (const Label& a : initials(q, node.q)) {
        StateSet nq = after(q, node.q, a);
        StateSet np = after(p, node.p, a);
        if (!seen.insert({np.states, nq.states}).second) continue;
        std::vector<Label> labels = node.labels;
        labels.push_back(a);
        next.push_back(PairNode{std::move(labels), std::move(np), std::move(nq)});
      }
    }
    if (next.empty()) {
      r.exhausted = true;
      return r;
    }
    level = std::move(next);
  }
}

/// Every label sequence of length at most `depth` that `lts` can perform,
/// with the τ-closed set reached, in length-then-lexicographic order.
template <class Visit>
void walk_sequences(const Lts& lts, std::size_t depth, Visit&& visit) {
  std::vector<std::pair<std::vector<Label>, StateSet>> level{{{}, tau_closure(lts, {lts.initial()})}};
  for (std::size_t k = 0;; ++k) {
    for (const auto& [labels, set] : level) visit(labels, set);
    if (k >= depth) return;
    std::vector<std::pair<std::vector<Label>, StateSet>> next;
    for (const auto& [labels, set] : level)
      for (const Label& a : initials(lts, set)) {
        auto l = labels;
        l.push_back(a);
        next.emplace_back(std::move(l), after(lts, set, a));
      }
    if (next.empty()) return;
    level = std::move(next);
  }
}

}  // namespace mcsp::detail
