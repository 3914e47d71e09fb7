#include "mcsp/traces.hpp"

#include <map>

#include "walk.hpp"

namespace mcsp {

bool operator<(const Trace& a, const Trace& b) {
  if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
  if (a.labels != b.labels) return a.labels < b.labels;
  return a.outcome < b.outcome;
}

std::string Trace::to_string() const {
  std::string out = "([";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i].name();
  out += "], ";
  out += outcome ? "some " + outcome->to_string() : "none";
  return out + ")";
}

namespace {

bool derivable(const Process& p, const Trace& t, std::size_t i, std::size_t fuel) {
  if (p.is_terminated()) return i == t.labels.size() && (!t.outcome || *t.outcome == p.value());
  const ProcessNode& n = p.node();
  if (i == t.labels.size()) {
    if (!t.outcome) return true;
    for (const auto& v : n.ticks().values())
      if (v == *t.outcome) return true;
  } else {
    for (std::size_t e = 0; e < n.ext().size(); ++e)
      if (n.labels().at_index(e) == t.labels[i] && derivable(n.ext().at_index(e).force(), t, i + 1, fuel))
        return true;
  }
  if (fuel == 0) return false;
  for (const auto& d : n.internal().values())
    if (derivable(d.force(), t, i, fuel - 1)) return true;
  return false;
}

void enumerate_traces(const Process& p, std::size_t depth, std::vector<Label>& prefix, TraceSet& out) {
  out.insert(Trace{prefix, std::nullopt});
  if (p.is_terminated()) {
    out.insert(Trace{prefix, p.value()});
    return;
  }
  const ProcessNode& n = p.node();
  for (const auto& v : n.ticks().values()) out.insert(Trace{prefix, v});
  if (depth == 0) return;
  for (std::size_t e = 0; e < n.ext().size(); ++e) {
    prefix.push_back(n.labels().at_index(e));
    enumerate_traces(n.ext().at_index(e).force(), depth - 1, prefix, out);
    prefix.pop_back();
  }
  for (const auto& d : n.internal().values()) enumerate_traces(d.force(), depth - 1, prefix, out);
}

// Traces of `s` within `d` steps, as suffixes.
class LtsTraces {
 public:
  explicit LtsTraces(const Lts& lts) : lts_(lts) {}

  const TraceSet& of(StateId s, std::size_t d) {
    auto key = std::make_pair(s, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    TraceSet out{Trace{}};
    const LtsState& st = lts_.state(s);
    if (st.terminated) {
      out.insert(Trace{{}, *st.terminated});
      return memo_.emplace(key, std::move(out)).first->second;
    }
    if (!st.expanded)
      throw Error("state " + std::to_string(s) + " is within the requested depth but was not explored");
    for (const auto& t : lts_.out(s)) {
      switch (t.action.kind) {
        case Action::Kind::Tick:
          out.insert(Trace{{}, t.action.value});
          break;
        case Action::Kind::Tau:
          if (d > 0) {
            const TraceSet& sub = of(*t.to, d - 1);
            out.insert(sub.begin(), sub.end());
          }
          break;
        case Action::Kind::Visible:
          if (d > 0) {
            const TraceSet& sub = of(*t.to, d - 1);
            for (const auto& tr : sub) {
              Trace x{{t.action.label}, tr.outcome};
              x.labels.insert(x.labels.end(), tr.labels.begin(), tr.labels.end());
              out.insert(std::move(x));
            }
          }
          break;
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const Lts& lts_;
  std::map<std::pair<StateId, std::size_t>, TraceSet> memo_;
};

std::set<Value> outcomes(const Lts& lts, const StateSet& s) {
  std::set<Value> out;
  for (StateId id : s.states) {
    auto v = lts.tick_values(id);
    out.insert(v.begin(), v.end());
  }
  return out;
}

void require_same_type(const Choice& a, const Choice& b) {
  if (!compatible(a, b))
    throw TypeMismatch("processes return different types: " + a.to_string() + " and " +
                       b.to_string());
}

}  // namespace

bool is_trace(const Process& p, const Trace& t, std::size_t tau_fuel) {
  return derivable(p, t, 0, tau_fuel);
}

TraceSet trace_set(const Process& p, std::size_t depth) {
  TraceSet out;
  std::vector<Label> prefix;
  enumerate_traces(p, depth, prefix, out);
  return out;
}

TraceSet trace_set(const Lts& lts, std::size_t depth) {
  LtsTraces t(lts);
  return t.of(lts.initial(), depth);
}

Lts explore_for_depth(const Process& p, const Env* env, std::size_t depth, std::size_t max_states) {
  // A state at path length k has breadth-first depth at most k, so every
  // state within `depth` steps gets expanded.
  return build_lts(p, env, ExploreLimits{max_states, depth + 1});
}

TraceVerdict trace_refines(const Lts& p, const Lts& q, std::size_t depth) {
  require_same_type(p.ret(), q.ret());
  std::optional<Trace> found;
  auto r = detail::walk_pairs(p, q, depth, [&](const std::vector<detail::PairNode>& level) {
    for (const auto& node : level) {
      if (!node.p.exact) continue;
      std::optional<Trace> cand;
      if (node.p.empty()) {
        cand = Trace{node.labels, std::nullopt};
      } else {
        auto op = outcomes(p, node.p);
        for (const auto& v : outcomes(q, node.q))
          if (!op.count(v)) {
            cand = Trace{node.labels, v};
            break;
          }
      }
      if (cand && (!found || *cand < *found)) found = cand;
    }
    return found.has_value();
  });
  if (found) return TraceVerdict::fail(*found, r.depth_checked);
  return TraceVerdict::pass(r.exhausted && p.complete() && q.complete(), r.depth_checked);
}

TraceVerdict trace_refines(const Process& p, const Process& q, std::size_t depth, ExploreLimits limits) {
  return trace_refines(build_lts(p, nullptr, limits), build_lts(q, nullptr, limits), depth);
}

std::pair<TraceVerdict, TraceVerdict> trace_equiv(const Lts& p, const Lts& q, std::size_t depth) {
  return {trace_refines(p, q, depth), trace_refines(q, p, depth)};
}

std::pair<TraceVerdict, TraceVerdict> trace_equiv(const Process& p, const Process& q,
                                                  std::size_t depth, ExploreLimits limits) {
  Lts lp = build_lts(p, nullptr, limits);
  Lts lq = build_lts(q, nullptr, limits);
  return trace_equiv(lp, lq, depth);
}

TraceSet map_outcomes(const TraceSet& s, const std::function<Value(const Value&)>& f) {
  TraceSet out;
  for (const auto& t : s) out.insert(Trace{t.labels, t.outcome ? std::optional<Value>(f(*t.outcome)) : std::nullopt});
  return out;
}

}  // namespace mcsp
