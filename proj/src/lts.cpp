#include "mcsp/lts.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace mcsp {

namespace {

using Name = ValueMap::Name;

std::shared_ptr<TermNode> clone(const Term& t) { return std::make_shared<TermNode>(*t); }

std::optional<Name> compose_names(Name outer, Name inner) {
  if (outer == Name::Id) return inner;
  if (inner == Name::Id) return outer;
  if (outer == Name::Swap) {
    if (inner == Name::Swap) return Name::Id;
    if (inner == Name::Inl) return Name::Inr;
    if (inner == Name::Inr) return Name::Inl;
  }
  return std::nullopt;
}

std::optional<Value> apply_untyped(Name f, const Value& v) {
  switch (f) {
    case Name::Id: return v;
    case Name::Inl: return Value::inl(v);
    case Name::Inr: return Value::inr(v);
    case Name::Swap:
      if (v.kind() == ValueKind::InL || v.kind() == ValueKind::InR) return swap_union(v);
      return std::nullopt;
    case Name::Custom: return std::nullopt;
  }
  return std::nullopt;
}

class Canon {
 public:
  explicit Canon(const Env* env) : env_(env) {}

  Term run(const Term& t) {
    auto n = clone(t);
    n->pos = {};
    for (auto& k : n->kids) k = run(k);
    for (auto& b : n->branches) b.body = run(b.body);
    std::stable_sort(n->branches.begin(), n->branches.end(),
                     [](const Branch& a, const Branch& b) { return a.pattern < b.pattern; });
    return simplify(n);
  }

 private:
  bool source_uninhabited(const TermNode& fm) const {
    if (fm.typed_fn) return !fm.typed_fn->from().inhabited();
    if (!env_) return false;
    auto c = synthesize(*env_, fm.kids[0]);
    return c && !c->inhabited();
  }

  // Local rules on a node whose children are already canonical.
  Term simplify(const std::shared_ptr<TermNode>& n) {
    switch (n->kind) {
      case TermKind::Fmap: {
        const Term& kid = n->kids[0];
        if (n->fn == Name::Id || source_uninhabited(*n)) return kid;
        if (kid->kind == TermKind::Return) {
          std::optional<Value> v;
          if (n->typed_fn) v = (*n->typed_fn)(kid->value);
          else v = apply_untyped(n->fn, kid->value);
          if (v) return term::ret(*v);
          return n;
        }
        if (kid->kind == TermKind::Fmap) {
          auto merged = std::make_shared<TermNode>(*n);
          if (n->typed_fn && kid->typed_fn) {
            auto comp = n->typed_fn->compose_after(*kid->typed_fn);
            if (!comp) return n;
            merged->fn = comp->name();
            merged->typed_fn = std::make_shared<const ValueMap>(*comp);
          } else {
            auto comp = compose_names(n->fn, kid->fn);
            if (!comp) return n;
            merged->fn = *comp;
            merged->typed_fn = nullptr;
          }
          merged->kids = {kid->kids[0]};
          return simplify(merged);
        }
        return n;
      }
      case TermKind::AddTick:
        if (n->kids[0]->kind == TermKind::Return) return n->kids[0];
        return n;
      case TermKind::Bind:
        if (n->kids[0]->kind == TermKind::Return)
          for (const auto& b : n->branches)
            if (b.pattern == n->kids[0]->value) return b.body;
        return n;
      default:
        return n;
    }
  }

  const Env* env_;
};

}  // namespace

Term canonicalize(const Term& t, const Env& env) { return Canon(&env).run(t); }
Term canonicalize(const Term& t) { return Canon(nullptr).run(t); }

bool operator==(const Action& a, const Action& b) {
  return a.kind == b.kind && a.label == b.label && a.value == b.value;
}

bool operator<(const Action& a, const Action& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.label != b.label) return a.label < b.label;
  return a.value < b.value;
}

std::string Action::to_string() const {
  switch (kind) {
    case Kind::Visible: return label.name();
    case Kind::Tau: return "τ";
    case Kind::Tick: return "✓ " + value.to_string();
  }
  return "?";
}

bool operator<(const Transition& a, const Transition& b) {
  if (a.from != b.from) return a.from < b.from;
  if (!(a.action == b.action)) return a.action < b.action;
  return a.to < b.to;
}

const LtsState& Lts::state(StateId s) const {
  if (s >= states_.size()) throw Error("unknown state " + std::to_string(s));
  return states_[s];
}

std::vector<Transition> Lts::transitions() const {
  std::vector<Transition> all;
  for (const auto& o : out_) all.insert(all.end(), o.begin(), o.end());
  return all;
}

bool Lts::stable(StateId s) const {
  for (const auto& t : out(s))
    if (t.action.kind == Action::Kind::Tau) return false;
  return true;
}

std::set<Label> Lts::initials(StateId s) const {
  state(s);
  std::set<Label> out;
  for (const auto& t : out_[s])
    if (t.action.kind == Action::Kind::Visible) out.insert(t.action.label);
  return out;
}

std::set<Value> Lts::tick_values(StateId s) const {
  std::set<Value> out;
  if (states_[s].terminated) out.insert(*states_[s].terminated);
  for (const auto& t : out_[s])
    if (t.action.kind == Action::Kind::Tick) out.insert(t.action.value);
  return out;
}

std::set<Label> Lts::alphabet() const {
  std::set<Label> out;
  for (const auto& o : out_)
    for (const auto& t : o)
      if (t.action.kind == Action::Kind::Visible) out.insert(t.action.label);
  return out;
}

namespace {

// Tarjan over τ-edges; marks states lying on a τ-cycle.
std::vector<bool> tau_cycles(const std::vector<std::vector<Transition>>& out) {
  std::size_t n = out.size();
  std::vector<bool> result(n, false);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  int counter = 0;

  std::function<void(StateId)> strong = [&](StateId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& t : out[v]) {
      if (t.action.kind != Action::Kind::Tau) continue;
      StateId w = *t.to;
      if (w == v) result[v] = true;
      if (index[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<StateId> comp;
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      if (comp.size() > 1)
        for (StateId s : comp) result[s] = true;
    }
  };
  for (StateId v = 0; v < n; ++v)
    if (index[v] < 0) strong(v);
  return result;
}

}  // namespace

Lts build_lts(const Process& root, const Env* env, ExploreLimits limits) {
  if (limits.max_states < 1 || limits.max_depth < 1)
    throw Error("exploration limits must be at least 1");
  Lts lts;
  lts.ret_ = root.ret();
  std::map<std::string, StateId> ids;

  auto key_of = [env](const Process& p) {
    Term c = env ? canonicalize(p.term(), *env) : canonicalize(p.term());
    return std::make_pair(c, pretty(c));
  };
  auto add = [&](const Process& p, Term c, std::string key, std::size_t depth) {
    StateId id = lts.states_.size();
    std::optional<Value> term_value;
    if (p.is_terminated()) term_value = p.value();
    lts.states_.push_back(LtsState{std::move(c), key, std::move(term_value), false, depth, p});
    lts.out_.emplace_back();
    ids.emplace(std::move(key), id);
    return id;
  };

  {
    auto [c, key] = key_of(root);
    add(root, c, key, 0);
  }
  std::deque<StateId> queue{0};
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    const Process p = lts.states_[s].process;
    if (p.is_terminated()) {
      lts.states_[s].expanded = true;
      continue;
    }
    std::size_t depth = lts.states_[s].depth;
    if (depth >= limits.max_depth) {
      lts.complete_ = false;
      continue;
    }

    struct Succ {
      Action action;
      Process target;
      Term term;
      std::string key;
    };
    std::vector<Succ> succs;
    std::set<std::string> fresh;
    const ProcessNode& n = p.node();
    auto consider = [&](Action a, const Process& q) {
      auto [c, key] = key_of(q);
      if (!ids.count(key)) fresh.insert(key);
      succs.push_back(Succ{std::move(a), q, std::move(c), std::move(key)});
    };
    for (std::size_t i = 0; i < n.ext().size(); ++i)
      consider(Action::visible(n.labels().at_index(i)), n.ext().at_index(i).force());
    for (std::size_t i = 0; i < n.internal().size(); ++i)
      consider(Action::tau(), n.internal().at_index(i).force());

    if (lts.states_.size() + fresh.size() > limits.max_states) {
      lts.complete_ = false;
      continue;
    }
    std::set<Transition> edges;
    for (auto& sc : succs) {
      auto it = ids.find(sc.key);
      StateId to;
      if (it == ids.end()) {
        to = add(sc.target, sc.term, sc.key, depth + 1);
        queue.push_back(to);
      } else {
        to = it->second;
      }
      edges.insert(Transition{s, sc.action, to});
    }
    for (const auto& v : n.ticks().values()) edges.insert(Transition{s, Action::tick(v), std::nullopt});
    lts.out_[s].assign(edges.begin(), edges.end());
    lts.states_[s].expanded = true;
  }
  lts.on_tau_cycle_ = tau_cycles(lts.out_);
  return lts;
}

Lts build_lts(const Env& env, std::string_view name, ExploreLimits limits) {
  return build_lts(elaborate(env, name), &env, limits);
}

StateSet tau_closure(const Lts& lts, std::vector<StateId> seeds) {
  std::vector<bool> seen(lts.states().size(), false);
  std::vector<StateId> work;
  for (StateId s : seeds)
    if (!seen[s]) {
      seen[s] = true;
      work.push_back(s);
    }
  StateSet out;
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    out.states.push_back(s);
    if (!lts.state(s).expanded) out.exact = false;
    for (const auto& t : lts.out(s))
      if (t.action.kind == Action::Kind::Tau && !seen[*t.to]) {
        seen[*t.to] = true;
        work.push_back(*t.to);
      }
  }
  std::sort(out.states.begin(), out.states.end());
  return out;
}

StateSet after(const Lts& lts, const StateSet& from, const Label& l) {
  std::vector<StateId> next;
  for (StateId s : from.states)
    for (const auto& t : lts.out(s))
      if (t.action.kind == Action::Kind::Visible && t.action.label == l) next.push_back(*t.to);
  StateSet out = tau_closure(lts, std::move(next));
  out.exact = out.exact && from.exact;
  return out;
}

StateSet after(const Lts& lts, const std::vector<Label>& labels) {
  StateSet cur = tau_closure(lts, {lts.initial()});
  for (const auto& l : labels) cur = after(lts, cur, l);
  return cur;
}

std::set<Label> initials(const Lts& lts, const StateSet& s) {
  std::set<Label> out;
  for (StateId id : s.states) {
    auto i = lts.initials(id);
    out.insert(i.begin(), i.end());
  }
  return out;
}

bool diverges(const Lts& lts, const StateSet& s) {
  return std::any_of(s.states.begin(), s.states.end(),
                     [&](StateId id) { return lts.diverges(id); });
}

StableStates stable_states_after(const Lts& lts, const std::vector<Label>& labels) {
  StateSet set = after(lts, labels);
  StableStates out;
  out.partial = !set.exact || !lts.complete();
  for (StateId s : set.states)
    if (lts.state(s).expanded && lts.stable(s)) out.states.push_back(s);
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Lts& lts) {
  std::ostringstream os;
  os << "digraph lts {\n  rankdir=LR;\n";
  std::map<std::string, std::string> sinks;  // value -> node name
  for (StateId s = 0; s < lts.states().size(); ++s) {
    const auto& st = lts.state(s);
    os << "  s" << s << " [label=\"" << dot_escape(st.key) << "\"";
    if (s == lts.initial()) os << ", penwidth=2";
    if (st.terminated) os << ", shape=doublecircle";
    if (!st.expanded) os << ", style=dotted";
    os << "];\n";
  }
  for (const auto& t : lts.transitions()) {
    switch (t.action.kind) {
      case Action::Kind::Visible:
        os << "  s" << t.from << " -> s" << *t.to << " [label=\"" << dot_escape(t.action.label.name())
           << "\"];\n";
        break;
      case Action::Kind::Tau:
        os << "  s" << t.from << " -> s" << *t.to << " [label=\"τ\", style=dashed];\n";
        break;
      case Action::Kind::Tick: {
        std::string v = t.action.value.to_string();
        auto [it, fresh] = sinks.emplace(v, "sink" + std::to_string(sinks.size()));
        const std::string& sink = it->second;
        if (fresh)
          os << "  " << sink << " [label=\"" << dot_escape(v) << "\", shape=doublecircle];\n";
        os << "  s" << t.from << " -> " << sink << " [label=\"✓ " << dot_escape(v) << "\"];\n";
        break;
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace mcsp
