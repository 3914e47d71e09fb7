#include "mcsp/failures.hpp"

#include <algorithm>

#include "walk.hpp"

namespace mcsp {

bool is_stable(const Process& p) { return p.is_terminated() || p.node().internal().size() == 0; }

std::set<Label> initials(const Process& p) {
  if (p.is_terminated()) return {};
  const auto& ls = p.node().labels().values();
  return std::set<Label>(ls.begin(), ls.end());
}

bool refuses(const Process& p, const std::set<Label>& refused, std::size_t tau_fuel) {
  if (is_stable(p)) {
    auto init = initials(p);
    return std::none_of(init.begin(), init.end(), [&](const Label& l) { return refused.count(l); });
  }
  if (tau_fuel == 0) return false;
  for (const auto& d : p.node().internal().values())
    if (refuses(d.force(), refused, tau_fuel - 1)) return true;
  return false;
}

namespace {

bool label_seq_less(const std::vector<Label>& a, const std::vector<Label>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void require_same_type(const Lts& p, const Lts& q) {
  if (!compatible(p.ret(), q.ret()))
    throw TypeMismatch("processes return different types: " + p.ret().to_string() + " and " +
                       q.ret().to_string());
}

std::vector<StateId> stable_in(const Lts& lts, const StateSet& s) {
  std::vector<StateId> out;
  for (StateId id : s.states)
    if (lts.state(id).expanded && lts.stable(id)) out.push_back(id);
  return out;
}

}  // namespace

bool operator<(const StableFailure& a, const StableFailure& b) {
  if (a.labels != b.labels) return label_seq_less(a.labels, b.labels);
  if (a.initials != b.initials) return a.initials < b.initials;
  return a.witness < b.witness;
}

bool operator<(const Divergence& a, const Divergence& b) {
  if (a.labels != b.labels) return label_seq_less(a.labels, b.labels);
  return a.mode < b.mode;
}

FailureSet stable_failures(const Lts& lts, std::size_t depth) {
  FailureSet out;
  out.partial = !lts.complete();
  detail::walk_sequences(lts, depth, [&](const std::vector<Label>& labels, const StateSet& set) {
    if (!set.exact) out.partial = true;
    for (StateId s : stable_in(lts, set)) out.failures.insert(StableFailure{labels, lts.initials(s), s});
  });
  return out;
}

std::set<Divergence> divergences_of(const Lts& lts, std::size_t depth) {
  std::set<Divergence> out;
  detail::walk_sequences(lts, depth, [&](const std::vector<Label>& labels, const StateSet& set) {
    if (diverges(lts, set))
      out.insert(Divergence{labels, Divergence::Mode::Definitive});
    else if (!set.exact)
      out.insert(Divergence{labels, Divergence::Mode::Bounded});
  });
  return out;
}

bool FdiVerdict::definitive() const {
  if (!holds()) return true;
  return traces.definitive && divergences.definitive && failures.definitive;
}

std::string FdiVerdict::failing_component() const {
  if (!traces.holds) return "traces";
  if (!divergences.holds) return "divergences";
  if (!failures.holds) return "failures";
  return "";
}

DivergenceVerdict refines_fdi1(const Lts& p, const Lts& q, std::size_t depth) {
  require_same_type(p, q);
  std::optional<std::vector<Label>> found;
  auto r = detail::walk_pairs(p, q, depth, [&](const std::vector<detail::PairNode>& level) {
    for (const auto& node : level)
      if (node.p.exact && diverges(q, node.q) && !diverges(p, node.p)) {
        found = node.labels;  // first in the level is least
        return true;
      }
    return false;
  });
  if (found) return DivergenceVerdict::fail(*found, r.depth_checked);
  return DivergenceVerdict::pass(r.exhausted && p.complete() && q.complete(), r.depth_checked);
}

FailureVerdict refines_fdi2(const Lts& p, const Lts& q, std::size_t depth) {
  require_same_type(p, q);
  std::optional<StableFailure> found;
  auto r = detail::walk_pairs(p, q, depth, [&](const std::vector<detail::PairNode>& level) {
    for (const auto& node : level) {
      if (!node.p.exact) continue;
      std::vector<std::set<Label>> p_inits;
      for (StateId s : stable_in(p, node.p)) p_inits.push_back(p.initials(s));
      for (StateId s : stable_in(q, node.q)) {
        auto iq = q.initials(s);
        bool covered = std::any_of(p_inits.begin(), p_inits.end(), [&](const std::set<Label>& ip) {
          return std::includes(iq.begin(), iq.end(), ip.begin(), ip.end());
        });
        StableFailure cand{node.labels, iq, s};
        if (!covered && (!found || cand < *found)) found = cand;
      }
    }
    return found.has_value();
  });
  if (found) return FailureVerdict::fail(*found, r.depth_checked);
  return FailureVerdict::pass(r.exhausted && p.complete() && q.complete(), r.depth_checked);
}

FdiVerdict refines_fdi(const Lts& p, const Lts& q, std::size_t depth) {
  return FdiVerdict{trace_refines(p, q, depth), refines_fdi1(p, q, depth), refines_fdi2(p, q, depth)};
}

std::pair<FdiVerdict, FdiVerdict> equiv_fdi(const Lts& p, const Lts& q, std::size_t depth) {
  return {refines_fdi(p, q, depth), refines_fdi(q, p, depth)};
}

FdiVerdict refines_fdi(const Process& p, const Process& q, std::size_t depth, ExploreLimits limits) {
  return refines_fdi(build_lts(p, nullptr, limits), build_lts(q, nullptr, limits), depth);
}

}  // namespace mcsp
