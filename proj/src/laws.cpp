#include "mcsp/laws.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace mcsp {

std::vector<Choice> GenConfig::default_value_choices() {
  Choice v = Choice::named("V", {"u", "w"});
  return {Choice::unit(),
          Choice::boolean(),
          v,
          Choice::fin(3),
          Choice::empty(),
          Choice::sum(Choice::unit(), Choice::boolean()),
          Choice::sum(v, Choice::unit()),
          Choice::sum(Choice::sum(Choice::unit(), Choice::unit()), v),
          Choice::sum(Choice::empty(), v)};
}

std::string root_name(const GenConfig& cfg) { return cfg.name_prefix + "0"; }

namespace {

// Recursion is arranged so that every cycle between definitions passes only
// through positions whose surrounding context disappears when the process
// moves on (prefix continuations, internal choice operands, bind branches,
// fmap id). Contexts that survive a step ([] operands, addTick, fmap
// inl/inr/swap, bind scrutinees) may only reach fresh definitions that never
// refer back, so generated processes have finitely many states.
class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg_.labels.empty()) throw Error("generator needs at least one label");
    if (cfg_.value_choices.empty()) throw Error("generator needs at least one value type");
    if (cfg_.max_ast_nodes < 1) throw Error("generator needs max_ast_nodes >= 1");
  }

  Env run() {
    Choice root = cfg_.root_type ? *cfg_.root_type : pick(cfg_.value_choices);
    declare(root, 0);
    for (std::size_t i = 0; i < defs_.size(); ++i) {
      left_ = cfg_.max_ast_nodes;
      owner_ = i;
      Choice c = defs_[i].annotation;
      defs_[i].body = gen(c, false, true);
    }
    return Env(defs_);
  }

 private:
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(double p) { return static_cast<double>(rng_() % 1000000) < p * 1000000.0; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

  std::size_t declare(const Choice& c, std::size_t floor) {
    defs_.push_back(Definition{cfg_.name_prefix + std::to_string(defs_.size()), c, nullptr, {}});
    floor_.push_back(floor);
    return defs_.size() - 1;
  }

  // A new definition referenced from here. Outside tail positions it starts
  // a region of its own that cannot refer back.
  std::size_t fresh(const Choice& c, bool tail) {
    return declare(c, tail ? floor_[owner_] : defs_.size());
  }

  Value element(const Choice& c) { return pick(enumerate(c)); }

  // Existing definitions of a compatible type that may be referenced here.
  // Unguarded references only go forward, which rules out unguarded cycles.
  std::vector<std::size_t> targets(const Choice& c, bool guarded, bool tail) {
    std::vector<std::size_t> out;
    if (!tail) return out;
    // Everything reachable from a region has a floor at least the region's,
    // so nothing inside can lead back to the context that opened it.
    for (std::size_t i = floor_[owner_]; i < defs_.size(); ++i)
      if (floor_[i] >= floor_[owner_] && (guarded || i > owner_) &&
          compatible(defs_[i].annotation, c))
        out.push_back(i);
    return out;
  }

  Term leaf(const Choice& c, bool guarded, bool tail) {
    enum { Stop, Skip, Return };
    std::vector<int> opts{Stop};
    if (c.inhabited()) {
      opts.push_back(Skip);
      opts.push_back(Return);
    }
    auto t = targets(c, guarded, tail);
    if (!t.empty() && (guarded ? chance(cfg_.recursion_probability * 2) : chance(0.3)))
      return term::ref(defs_[pick(t)].name);
    switch (pick(opts)) {
      case Skip: return term::skip(element(c));
      case Return: return term::ret(element(c));
      default: return term::stop();
    }
  }

  Term gen(const Choice& c, bool guarded, bool tail) {
    if (left_ <= 1) {
      left_ = 0;
      return leaf(c, guarded, tail);
    }
    if (guarded && chance(cfg_.recursion_probability)) {
      auto t = targets(c, true, tail);
      if (!t.empty()) {
        --left_;
        return term::ref(defs_[pick(t)].name);
      }
    }
    enum { Leaf, Prefix, AddTick, FmapId, Ext, Int, FmapInl, FmapInr, FmapSwap, Bind, Forward };
    std::vector<int> opts{Leaf, Prefix, Prefix, FmapId};
    bool split = c.kind() == ChoiceKind::Union || !c.inhabited();
    if (c.inhabited()) opts.push_back(AddTick);
    if (split) opts.insert(opts.end(), {Ext, Ext, Int, Int, FmapInl, FmapInr, FmapSwap});
    if (defs_.size() < cfg_.max_definitions) opts.insert(opts.end(), {Bind, Bind, Forward});
    --left_;
    Choice l = c.kind() == ChoiceKind::Union ? c.left() : Choice::empty();
    Choice r = c.kind() == ChoiceKind::Union ? c.right() : Choice::empty();
    switch (pick(opts)) {
      case Prefix: {
        Label a = pick(cfg_.labels);
        return term::prefix(a, gen(c, true, tail));
      }
      case AddTick: {
        Value v = element(c);
        return term::add_tick(v, gen(c, guarded, false));
      }
      case FmapId:
        return term::fmap(ValueMap::Name::Id, gen(c, guarded, tail));
      case Ext: {
        Term a = gen(l, guarded, false);
        return term::ext_choice(a, gen(r, guarded, false));
      }
      case Int: {
        Term a = gen(l, true, tail);
        return term::int_choice(a, gen(r, true, tail));
      }
      case FmapInl:
        return term::fmap(ValueMap::Name::Inl, gen(l, guarded, false));
      case FmapInr:
        return term::fmap(ValueMap::Name::Inr, gen(r, guarded, false));
      case FmapSwap:
        return term::fmap(ValueMap::Name::Swap,
                          gen(c.inhabited() ? Choice::sum(r, l) : Choice::empty(), guarded, false));
      case Bind: {
        // The scrutinee gets its own definition so its type is known.
        std::vector<Choice> inhabited;
        for (const auto& vc : cfg_.value_choices)
          if (vc.inhabited()) inhabited.push_back(vc);
        if (inhabited.empty()) break;
        Choice sc = pick(inhabited);
        std::size_t helper = fresh(sc, false);
        std::vector<Branch> branches;
        for (const auto& v : enumerate(sc)) branches.push_back(Branch{v, gen(c, false, tail)});
        return term::bind(term::ref(defs_[helper].name), std::move(branches));
      }
      case Forward:
        return term::ref(defs_[fresh(c, tail)].name);
      default:
        break;
    }
    return leaf(c, guarded, tail);
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<Definition> defs_;
  std::vector<std::size_t> floor_;  // lowest definition each may refer to
  std::size_t left_ = 0;
  std::size_t owner_ = 0;
};

std::string show(const std::vector<Label>& labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i].name();
  return out + "]";
}

std::string show(const StableFailure& f) {
  std::string out = "(" + show(f.labels) + ", {";
  std::size_t i = 0;
  for (const auto& l : f.initials) out += (i++ ? "," : "") + l.name();
  return out + "})";
}

std::string show(const FdiVerdict& v) {
  if (v.holds()) return v.definitive() ? "holds" : "holds (bounded)";
  std::string c = v.failing_component();
  if (c == "traces") return "fails on traces at " + v.traces.counterexample->to_string();
  if (c == "divergences") return "fails on divergences at " + show(*v.divergences.counterexample);
  return "fails on stable failures at " + show(*v.failures.counterexample);
}

LawReport single(const std::string& law) {
  LawReport r;
  r.law = law;
  r.trials = 1;
  return r;
}

void fail(LawReport& r, std::string witness) { r.failures.push_back(LawFailure{0, "", std::move(witness)}); }

std::string diff(const TraceSet& a, const TraceSet& b) {
  for (const auto& t : a)
    if (!b.count(t)) return t.to_string() + " only on the left";
  for (const auto& t : b)
    if (!a.count(t)) return t.to_string() + " only on the right";
  return "";
}

}  // namespace

Env gen_process(const GenConfig& cfg) { return Generator(cfg).run(); }

void LawReport::merge(const LawReport& trial, std::uint64_t seed, const std::string& inputs) {
  trials += trial.trials;
  bounded = bounded || trial.bounded;
  for (auto f : trial.failures) {
    f.seed = seed;
    f.inputs = inputs;
    failures.push_back(std::move(f));
  }
}

LawReport check_ext_choice_comm(const Process& p, const Process& q, std::size_t depth) {
  LawReport r = single("extchoice-comm");
  TraceSet left = trace_set(ext_choice(p, q), depth);
  TraceSet right = map_outcomes(trace_set(ext_choice(q, p), depth), swap_union);
  if (left != right) fail(r, diff(left, right));
  return r;
}

LawReport check_ext_choice_comm_failures(const Process& p, const Process& q, std::size_t depth,
                                         ExploreLimits limits) {
  LawReport r = single("extchoice-comm-failures");
  Process pq = ext_choice(p, q);
  Process qp = ext_choice(q, p);
  Process swapped = fmap(ValueMap::swap(q.ret(), p.ret()), qp);
  Lts a = build_lts(pq, nullptr, limits);
  Lts b = build_lts(swapped, nullptr, limits);
  auto [ab, ba] = equiv_fdi(a, b, depth);
  r.bounded = !ab.definitive() || !ba.definitive();
  if (!ab.holds()) fail(r, "p [] q vs swapped q [] p: " + show(ab));
  if (!ba.holds()) fail(r, "swapped q [] p vs p [] q: " + show(ba));
  return r;
}

LawReport check_partial_order(const Lts& p, const Lts& q, const Lts& r, std::size_t depth) {
  LawReport rep = single("partial-order");
  FdiVerdict pp = refines_fdi(p, p, depth);
  if (!pp.holds()) fail(rep, "reflexivity: " + show(pp));
  FdiVerdict pq = refines_fdi(p, q, depth);
  FdiVerdict qr = refines_fdi(q, r, depth);
  if (pq.holds() && qr.holds()) {
    FdiVerdict pr = refines_fdi(p, r, depth);
    if (!pr.holds()) fail(rep, "transitivity: " + show(pr));
  }
  FdiVerdict qp = refines_fdi(q, p, depth);
  if (pq.holds() && qp.holds()) {
    auto [a, b] = equiv_fdi(p, q, depth);
    if (!a.holds() || !b.holds()) fail(rep, "antisymmetry: mutual refinement but not equivalent");
  }
  rep.bounded = !p.complete() || !q.complete() || !r.complete();
  return rep;
}

LawReport check_prefix_closure(const Process& p, std::size_t depth) {
  LawReport r = single("prefix-closure");
  TraceSet s = trace_set(p, depth);
  for (const auto& t : s) {
    if (t.outcome) continue;
    for (std::size_t k = 0; k < t.labels.size(); ++k) {
      Trace seg{std::vector<Label>(t.labels.begin(), t.labels.begin() + k), std::nullopt};
      if (!s.count(seg)) {
        fail(r, seg.to_string() + " missing although " + t.to_string() + " is present");
        return r;
      }
    }
  }
  return r;
}

LawReport check_add_tick_trace_effect(const Process& p, const Value& a, std::size_t depth) {
  LawReport r = single("addtick-trace");
  if (p.is_terminated()) throw Error("addTick law needs a process that has not terminated");
  TraceSet expected = trace_set(p, depth);
  expected.insert(Trace{{}, a});
  TraceSet actual = trace_set(add_timed_tick(a, p), depth);
  if (actual != expected) fail(r, diff(actual, expected));
  return r;
}

LawReport check_trace_monotone(const Process& p, std::size_t depth) {
  LawReport r = single("trace-monotone");
  TraceSet prev = trace_set(p, 0);
  for (std::size_t d = 1; d <= depth; ++d) {
    TraceSet cur = trace_set(p, d);
    if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) {
      fail(r, "depth " + std::to_string(d - 1) + " has a trace missing at depth " + std::to_string(d));
      return r;
    }
    prev = std::move(cur);
  }
  return r;
}

namespace {
const ExploreLimits kLawLimits{5000, 200};
}  // namespace

LawReport check_lts_oracle(const Process& p, const Env& env, std::size_t depth) {
  LawReport r = single("lts-oracle");
  // A complete graph is the intended oracle; fall back to a depth-sized one.
  Lts lts = build_lts(p, &env, kLawLimits);
  if (!lts.complete()) lts = explore_for_depth(p, &env, depth);
  r.bounded = !lts.complete();
  TraceSet direct = trace_set(p, depth);
  TraceSet graph = trace_set(lts, depth);
  if (direct != graph) fail(r, diff(direct, graph));
  return r;
}

namespace {

struct Sample {
  Env env;
  Process process;
};

GenConfig config_for(std::uint64_t seed, const std::string& prefix = "P") {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.name_prefix = prefix;
  return cfg;
}

Sample sample(const GenConfig& cfg) {
  Env env = gen_process(cfg);
  auto diags = check_env(env);
  if (!diags.empty())
    throw Error("generator produced an invalid program (seed " + std::to_string(cfg.seed) +
                "): " + format(diags.front()) + "\n" + pretty(env));
  Process p = elaborate(env, root_name(cfg));
  return Sample{std::move(env), std::move(p)};
}

Env merge(const Env& a, const Env& b) {
  Env out = a;
  for (const auto& d : b.definitions()) out.add(d);
  return out;
}


// R random; Q = R or S chosen internally; P = Q or T chosen internally.
// Each step only adds behaviour, so P ⊑ Q ⊑ R by construction.
LawReport transitivity_trial(std::uint64_t seed, std::size_t depth, std::string& inputs) {
  GenConfig base = config_for(seed, "R");
  base.root_type = Choice::named("V", {"u", "w"});
  base.recursion_probability = 0.15;
  Env env = gen_process(base);
  for (const char* prefix : {"S", "T"}) {
    GenConfig g = config_for(seed * 31 + (prefix[0] == 'S' ? 1 : 2), prefix);
    g.root_type = base.root_type;
    env = merge(env, gen_process(g));
  }
  env = merge(env, parse("CHOICE2 : Unit + Unit = SKIP tt |~| SKIP tt\n"
                         "Q : {u, w} = CHOICE2 >>= { inl tt -> R0 ; inr tt -> S0 }\n"
                         "P : {u, w} = CHOICE2 >>= { inl tt -> Q ; inr tt -> T0 }\n"));
  inputs = pretty(env);
  auto diags = check_env(env);
  if (!diags.empty()) throw Error("invalid chain: " + format(diags.front()));
  Lts p = build_lts(env, "P", kLawLimits);
  Lts q = build_lts(env, "Q", kLawLimits);
  Lts r = build_lts(env, "R0", kLawLimits);
  LawReport rep = single("transitivity");
  FdiVerdict pq = refines_fdi(p, q, depth);
  FdiVerdict qr = refines_fdi(q, r, depth);
  if (!pq.holds()) fail(rep, "premise P ⊑ Q " + show(pq));
  if (!qr.holds()) fail(rep, "premise Q ⊑ R " + show(qr));
  FdiVerdict pr = refines_fdi(p, r, depth);
  if (!pr.holds()) fail(rep, "conclusion P ⊑ R " + show(pr));
  rep.bounded = !pr.definitive();
  return rep;
}

}  // namespace

std::vector<std::string> law_names() {
  return {"extchoice-comm", "extchoice-comm-failures", "reflexivity",   "antisymmetry",
          "transitivity",   "prefix-closure",          "trace-monotone", "addtick-trace",
          "lts-oracle"};
}

LawReport run_law(const std::string& law, std::size_t trials, std::uint64_t base_seed,
                  std::size_t depth) {
  auto names = law_names();
  if (std::find(names.begin(), names.end(), law) == names.end())
    throw Error("unknown law '" + law + "'");
  LawReport report;
  report.law = law;
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t seed = base_seed + i;
    std::string inputs;
    LawReport trial;
    if (law == "extchoice-comm" || law == "extchoice-comm-failures") {
      GenConfig gp = config_for(seed, "P");
      GenConfig gq = config_for(seed ^ 0x9e3779b97f4a7c15ULL, "Q");
      Sample p = sample(gp);
      Sample q = sample(gq);
      inputs = pretty(p.env) + pretty(q.env);
      trial = law == "extchoice-comm" ? check_ext_choice_comm(p.process, q.process, depth)
                                      : check_ext_choice_comm_failures(p.process, q.process, depth, kLawLimits);
    } else if (law == "reflexivity" || law == "antisymmetry") {
      Sample p = sample(config_for(seed));
      inputs = pretty(p.env);
      Lts lts = build_lts(p.process, &p.env, kLawLimits);
      trial = single(law);
      trial.bounded = !lts.complete();
      if (law == "reflexivity") {
        FdiVerdict v = refines_fdi(lts, lts, depth);
        if (!v.holds()) fail(trial, show(v));
      } else {
        FdiVerdict a = refines_fdi(lts, lts, depth);
        auto [x, y] = equiv_fdi(lts, lts, depth);
        if (a.holds() && (!x.holds() || !y.holds())) fail(trial, "mutual refinement but not equivalent");
        if (!a.holds()) fail(trial, "refinement of p by itself " + show(a));
      }
    } else if (law == "transitivity") {
      trial = transitivity_trial(seed, depth, inputs);
    } else if (law == "addtick-trace") {
      // Retry with derived seeds until the precondition holds.
      GenConfig cfg = config_for(seed);
      for (std::uint64_t k = 0;; ++k) {
        cfg.seed = seed + (k << 32);
        Sample p = sample(cfg);
        if (p.process.is_terminated() || !p.process.ret().inhabited()) continue;
        std::mt19937_64 rng(cfg.seed);
        auto elems = enumerate(p.process.ret());
        Value a = elems[rng() % elems.size()];
        inputs = pretty(p.env) + "-- a = " + a.to_string() + "\n";
        trial = check_add_tick_trace_effect(p.process, a, depth);
        break;
      }
    } else {
      Sample p = sample(config_for(seed));
      inputs = pretty(p.env);
      if (law == "prefix-closure") trial = check_prefix_closure(p.process, depth);
      else if (law == "trace-monotone") trial = check_trace_monotone(p.process, depth);
      else trial = check_lts_oracle(p.process, p.env, depth);
    }
    report.merge(trial, seed, inputs);
  }
  return report;
}

}  // namespace mcsp
