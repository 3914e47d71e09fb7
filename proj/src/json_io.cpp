#include "mcsp/json_io.hpp"

namespace mcsp::json {

namespace {

json outcome(const std::optional<Value>& v) { return v ? json(v->to_string()) : json(nullptr); }

std::set<Label> complement(const std::set<Label>& alphabet, const std::set<Label>& in) {
  std::set<Label> out;
  for (const auto& l : alphabet)
    if (!in.count(l)) out.insert(l);
  return out;
}

template <class W>
json verdict_base(const Verdict<W>& v) {
  return json{{"holds", v.holds}, {"definitive", v.definitive}, {"depthChecked", v.depth_checked}};
}

const char* kind_name(Action::Kind k) {
  switch (k) {
    case Action::Kind::Visible: return "visible";
    case Action::Kind::Tau: return "tau";
    case Action::Kind::Tick: return "tick";
  }
  return "?";
}

}  // namespace

json labels(const std::vector<Label>& ls) {
  json out = json::array();
  for (const auto& l : ls) out.push_back(l.name());
  return out;
}

json labels(const std::set<Label>& ls) { return labels(std::vector<Label>(ls.begin(), ls.end())); }

json trace(const Trace& t) { return json{{"labels", labels(t.labels)}, {"outcome", outcome(t.outcome)}}; }

json traces(const TraceSet& s) {
  json out = json::array();
  for (const auto& t : s) out.push_back(trace(t));
  return out;
}

json failure(const StableFailure& f, const std::set<Label>& alphabet) {
  return json{{"labels", labels(f.labels)},
              {"initials", labels(f.initials)},
              {"refusedExample", labels(complement(alphabet, f.initials))}};
}

json failures(const FailureSet& s, const std::set<Label>& alphabet) {
  json items = json::array();
  // Distinct witness states may share a failure; report each pair once.
  const StableFailure* prev = nullptr;
  for (const auto& f : s.failures) {
    if (!prev || prev->labels != f.labels || prev->initials != f.initials) items.push_back(failure(f, alphabet));
    prev = &f;
  }
  return json{{"failures", items}, {"partial", s.partial}};
}

json divergence(const Divergence& d) {
  return json{{"labels", labels(d.labels)},
              {"mode", d.mode == Divergence::Mode::Definitive ? "definitive" : "bounded"}};
}

json divergences(const std::set<Divergence>& s) {
  json out = json::array();
  for (const auto& d : s) out.push_back(divergence(d));
  return out;
}

json verdict(const TraceVerdict& v) {
  json out = verdict_base(v);
  out["counterexample"] = v.counterexample ? trace(*v.counterexample) : json(nullptr);
  return out;
}

json verdict(const DivergenceVerdict& v) {
  json out = verdict_base(v);
  out["counterexample"] = v.counterexample ? json{{"labels", labels(*v.counterexample)}} : json(nullptr);
  return out;
}

json verdict(const FailureVerdict& v, const std::set<Label>& alphabet) {
  json out = verdict_base(v);
  out["counterexample"] = v.counterexample ? failure(*v.counterexample, alphabet) : json(nullptr);
  return out;
}

json verdict(const FdiVerdict& v, const std::set<Label>& alphabet) {
  std::string failing = v.failing_component();
  return json{{"holds", v.holds()},
              {"definitive", v.definitive()},
              {"failing", failing.empty() ? json(nullptr) : json(failing)},
              {"traces", verdict(v.traces)},
              {"divergences", verdict(v.divergences)},
              {"failures", verdict(v.failures, alphabet)}};
}

json lts(const Lts& l) {
  json states = json::array();
  for (StateId s = 0; s < l.states().size(); ++s) {
    const LtsState& st = l.state(s);
    states.push_back({{"id", s},
                      {"term", st.key},
                      {"terminated", outcome(st.terminated)},
                      {"expanded", st.expanded},
                      {"stable", l.stable(s)},
                      {"divergent", l.diverges(s)},
                      {"initials", labels(l.initials(s))}});
  }
  json edges = json::array();
  for (const auto& t : l.transitions()) {
    json e{{"from", t.from}, {"kind", kind_name(t.action.kind)}, {"to", t.to ? json(*t.to) : json(nullptr)}};
    if (t.action.kind == Action::Kind::Visible) e["label"] = t.action.label.name();
    if (t.action.kind == Action::Kind::Tick) e["value"] = t.action.value.to_string();
    edges.push_back(std::move(e));
  }
  return json{{"returnType", l.ret().to_string()},
              {"initial", l.initial()},
              {"complete", l.complete()},
              {"states", states},
              {"edges", edges}};
}

json diagnostic(const Diagnostic& d) {
  return json{{"kind", to_string(d.kind)},
              {"message", d.message},
              {"line", d.pos.line},
              {"column", d.pos.column},
              {"definition", d.definition},
              {"text", format(d)}};
}

json diagnostics(const std::vector<Diagnostic>& ds) {
  json out = json::array();
  for (const auto& d : ds) out.push_back(diagnostic(d));
  return out;
}

json law_report(const LawReport& r) {
  json fs = json::array();
  for (const auto& f : r.failures)
    fs.push_back({{"seed", f.seed}, {"inputs", f.inputs}, {"witness", f.witness}});
  return json{{"law", r.law},
              {"trials", r.trials},
              {"passed", r.passed()},
              {"bounded", r.bounded},
              {"failures", fs}};
}

}  // namespace mcsp::json
