#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "mcsp/lang.hpp"

namespace mcsp {

const Definition* Env::find(std::string_view name) const {
  for (const auto& d : defs_)
    if (d.name == name) return &d;
  return nullptr;
}

std::string to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::Syntax: return "syntax";
    case DiagnosticKind::Duplicate: return "duplicate";
    case DiagnosticKind::UnknownName: return "unknown-name";
    case DiagnosticKind::Type: return "type";
    case DiagnosticKind::Unguarded: return "unguarded";
    case DiagnosticKind::Pattern: return "pattern";
    case DiagnosticKind::Inference: return "inference";
  }
  return "?";
}

std::string format(const Diagnostic& d) {
  std::string out = std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) + ": " +
                    to_string(d.kind) + " error";
  if (!d.definition.empty()) out += " in " + d.definition;
  return out + ": " + d.message;
}

std::vector<Label> alphabet(const Env& env) {
  std::vector<Label> out;
  for (const auto& d : env.definitions()) collect_labels(d.body, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Operand types of a binary choice over `c`. Uninhabited non-union targets
// accept uninhabited operands on both sides.
std::optional<std::pair<Choice, Choice>> split(const Choice& c) {
  if (c.kind() == ChoiceKind::Union) return std::make_pair(c.left(), c.right());
  if (!c.inhabited()) return std::make_pair(Choice::empty(), Choice::empty());
  return std::nullopt;
}

std::optional<Choice> synth(const Env& env, const Term& t, std::set<std::string>& visiting) {
  switch (t->kind) {
    case TermKind::Ref: {
      const Definition* d = env.find(t->name);
      if (!d) return std::nullopt;
      return d->annotation;
    }
    case TermKind::Prefix:
    case TermKind::AddTick:
      return synth(env, t->kids[0], visiting);
    case TermKind::ExtChoice:
    case TermKind::IntChoice: {
      auto l = synth(env, t->kids[0], visiting);
      auto r = synth(env, t->kids[1], visiting);
      if (!l || !r) return std::nullopt;
      return Choice::sum(*l, *r);
    }
    case TermKind::Fmap: {
      if (t->typed_fn) return t->typed_fn->to();
      auto inner = synth(env, t->kids[0], visiting);
      if (!inner) return std::nullopt;
      if (t->fn == ValueMap::Name::Id) return inner;
      if (t->fn == ValueMap::Name::Swap && inner->kind() == ChoiceKind::Union)
        return Choice::sum(inner->right(), inner->left());
      return std::nullopt;
    }
    case TermKind::Bind:
      for (const auto& b : t->branches)
        if (auto c = synth(env, b.body, visiting)) return c;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

bool may_term(const Env& env, const Term& t, std::set<std::string>& visiting) {
  switch (t->kind) {
    case TermKind::Return:
      return true;
    case TermKind::Fmap:
    case TermKind::AddTick:
      return may_term(env, t->kids[0], visiting);
    case TermKind::Ref: {
      const Definition* d = env.find(t->name);
      if (!d || !visiting.insert(t->name).second) return false;
      bool r = may_term(env, d->body, visiting);
      visiting.erase(t->name);
      return r;
    }
    case TermKind::Bind:
      if (!may_term(env, t->kids[0], visiting)) return false;
      return std::any_of(t->branches.begin(), t->branches.end(),
                         [&](const Branch& b) { return may_term(env, b.body, visiting); });
    default:
      return false;
  }
}

class Checker {
 public:
  explicit Checker(const Env& env) : env_(env) {}

  std::vector<Diagnostic> run() {
    for (const auto& d : env_.definitions()) {
      current_ = d.name;
      check(d.body, d.annotation);
    }
    guardedness();
    return std::move(diags_);
  }

 private:
  void report(DiagnosticKind k, const std::string& msg, SourcePos pos) {
    diags_.push_back(Diagnostic{k, msg, pos, current_});
  }

  void check_value(const Value& v, const Choice& c, SourcePos pos, const char* what) {
    if (!inhabits(c, v))
      report(DiagnosticKind::Type,
             std::string(what) + " value '" + v.to_string() + "' is not an element of " +
                 c.to_string(),
             pos);
  }

  void check(const Term& t, const Choice& c) {
    switch (t->kind) {
      case TermKind::Stop:
        return;
      case TermKind::Skip:
        return check_value(t->value, c, t->pos, "SKIP");
      case TermKind::Return:
        return check_value(t->value, c, t->pos, "RETURN");
      case TermKind::Prefix:
        return check(t->kids[0], c);
      case TermKind::AddTick:
        check_value(t->value, c, t->pos, "addTick");
        return check(t->kids[0], c);
      case TermKind::ExtChoice:
      case TermKind::IntChoice: {
        auto parts = split(c);
        if (!parts) {
          report(DiagnosticKind::Type,
                 std::string("the operands of ") +
                     (t->kind == TermKind::ExtChoice ? "[]" : "|~|") +
                     " return a disjoint union, but the expected type is " + c.to_string(),
                 t->pos);
          return;
        }
        check(t->kids[0], parts->first);
        check(t->kids[1], parts->second);
        return;
      }
      case TermKind::Fmap:
        return check_fmap(t, c);
      case TermKind::Ref: {
        const Definition* d = env_.find(t->name);
        if (!d) {
          report(DiagnosticKind::UnknownName, "no definition named '" + t->name + "'", t->pos);
        } else if (!compatible(d->annotation, c)) {
          report(DiagnosticKind::Type,
                 "'" + t->name + "' returns " + d->annotation.to_string() + ", expected " +
                     c.to_string(),
                 t->pos);
        }
        return;
      }
      case TermKind::Bind:
        return check_bind(t, c);
    }
  }

  void check_fmap(const Term& t, const Choice& c) {
    const Term& kid = t->kids[0];
    switch (t->fn) {
      case ValueMap::Name::Id:
        return check(kid, c);
      case ValueMap::Name::Inl:
      case ValueMap::Name::Inr: {
        auto parts = split(c);
        if (!parts) break;
        return check(kid, t->fn == ValueMap::Name::Inl ? parts->first : parts->second);
      }
      case ValueMap::Name::Swap: {
        auto parts = split(c);
        if (!parts) break;
        return check(kid, c.inhabited() ? Choice::sum(parts->second, parts->first)
                                        : Choice::empty());
      }
      case ValueMap::Name::Custom:
        report(DiagnosticKind::Type, "only id, inl, inr and swap can be mapped", t->pos);
        return;
    }
    report(DiagnosticKind::Type,
           "fmap " + fn_name(t->fn) + " produces a disjoint union, but the expected type is " +
               c.to_string(),
           t->pos);
  }

  void check_bind(const Term& t, const Choice& c) {
    std::set<std::string> visiting;
    auto sc = synth(env_, t->kids[0], visiting);
    if (!sc) {
      report(DiagnosticKind::Inference,
             "cannot infer the return type of the process before '>>='; give it its own "
             "annotated definition",
             t->pos);
      for (const auto& b : t->branches) check(b.body, c);
      return;
    }
    check(t->kids[0], *sc);
    std::vector<Value> seen;
    for (const auto& b : t->branches) {
      if (!inhabits(*sc, b.pattern)) {
        report(DiagnosticKind::Pattern,
               "pattern '" + b.pattern.to_string() + "' is not an element of " + sc->to_string(),
               b.body->pos);
      } else if (std::find(seen.begin(), seen.end(), b.pattern) != seen.end()) {
        report(DiagnosticKind::Pattern, "overlapping branch for '" + b.pattern.to_string() + "'",
               b.body->pos);
      } else {
        seen.push_back(b.pattern);
      }
      check(b.body, c);
    }
    std::vector<std::string> missing;
    for (const auto& v : enumerate(*sc))
      if (std::find(seen.begin(), seen.end(), v) == seen.end()) missing.push_back(v.to_string());
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      report(DiagnosticKind::Pattern, "branches are not exhaustive; missing " + list, t->pos);
    }
  }

  // Collects references reachable without passing a deferred position.
  void unguarded_refs(const Term& t, std::vector<const TermNode*>& out) {
    switch (t->kind) {
      case TermKind::Ref:
        out.push_back(t.get());
        return;
      case TermKind::Prefix:
      case TermKind::IntChoice:
        return;
      case TermKind::Bind: {
        unguarded_refs(t->kids[0], out);
        std::set<std::string> visiting;
        if (may_term(env_, t->kids[0], visiting))
          for (const auto& b : t->branches) unguarded_refs(b.body, out);
        return;
      }
      default:
        for (const auto& k : t->kids) unguarded_refs(k, out);
    }
  }

  void guardedness() {
    std::map<std::string, std::vector<const TermNode*>> edges;
    for (const auto& d : env_.definitions()) unguarded_refs(d.body, edges[d.name]);

    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::set<std::string> reported;

    std::function<void(const std::string&)> visit = [&](const std::string& n) {
      mark[n] = Mark::Active;
      stack.push_back(n);
      for (const TermNode* r : edges[n]) {
        if (!env_.find(r->name)) continue;
        Mark m = mark[r->name];
        if (m == Mark::Active) {
          auto it = std::find(stack.begin(), stack.end(), r->name);
          std::string path;
          for (auto j = it; j != stack.end(); ++j) path += *j + " -> ";
          path += r->name;
          if (reported.insert(r->name).second) {
            current_ = n;
            report(DiagnosticKind::Unguarded,
                   "unguarded recursion " + path +
                       "; every cycle must pass an event prefix, an internal choice or a bind "
                       "continuation",
                   r->pos);
          }
        } else if (m == Mark::None) {
          visit(r->name);
        }
      }
      stack.pop_back();
      mark[n] = Mark::Done;
    };
    for (const auto& d : env_.definitions())
      if (mark[d.name] == Mark::None) visit(d.name);
  }

  const Env& env_;
  std::string current_;
  std::vector<Diagnostic> diags_;
};

using EnvPtr = std::shared_ptr<const Env>;

Process elab(const EnvPtr& env, const Term& t, const Choice& c);

Deferred defer(const EnvPtr& env, const Term& t, const Choice& c) {
  return Deferred(c, t, [env, t, c] { return elab(env, t, c); });
}

std::pair<Choice, Choice> operands(const Choice& c) {
  auto parts = split(c);
  if (!parts) throw TypeMismatch("expected a disjoint union, got " + c.to_string());
  return *parts;
}

Process elab(const EnvPtr& env, const Term& t, const Choice& c) {
  switch (t->kind) {
    case TermKind::Stop:
      return stop(c);
    case TermKind::Skip:
      return skip(c, t->value);
    case TermKind::Return:
      return Process::terminated(c, t->value);
    case TermKind::Prefix:
      return prefix(t->label, defer(env, t->kids[0], c));
    case TermKind::AddTick:
      return add_timed_tick(t->value, elab(env, t->kids[0], c));
    case TermKind::ExtChoice: {
      auto [c0, c1] = operands(c);
      return ext_choice(elab(env, t->kids[0], c0), elab(env, t->kids[1], c1)).retag(c);
    }
    case TermKind::IntChoice: {
      auto [c0, c1] = operands(c);
      return int_choice(defer(env, t->kids[0], c0), defer(env, t->kids[1], c1)).retag(c);
    }
    case TermKind::Fmap: {
      const Term& kid = t->kids[0];
      switch (t->fn) {
        case ValueMap::Name::Id:
          return fmap(ValueMap::identity(c), elab(env, kid, c));
        case ValueMap::Name::Inl: {
          auto [a, b] = operands(c);
          return fmap(ValueMap::inl(a, b), elab(env, kid, a)).retag(c);
        }
        case ValueMap::Name::Inr: {
          auto [a, b] = operands(c);
          return fmap(ValueMap::inr(a, b), elab(env, kid, b)).retag(c);
        }
        case ValueMap::Name::Swap: {
          auto [a, b] = operands(c);
          return fmap(ValueMap::swap(b, a), elab(env, kid, Choice::sum(b, a))).retag(c);
        }
        case ValueMap::Name::Custom:
          break;
      }
      throw TypeMismatch("cannot elaborate a custom map");
    }
    case TermKind::Ref: {
      const Definition* d = env->find(t->name);
      if (!d) throw UnknownName("no definition named '" + t->name + "'");
      return elab(env, d->body, d->annotation).retag(c).with_term(term::ref(t->name));
    }
    case TermKind::Bind: {
      std::set<std::string> visiting;
      auto sc = synth(*env, t->kids[0], visiting);
      if (!sc) throw TypeMismatch("cannot infer the scrutinee type of a bind");
      Process p = elab(env, t->kids[0], *sc);
      auto k = ChoiceMap<Deferred>::build(*sc, [&](const Value& v) {
        for (const auto& b : t->branches)
          if (b.pattern == v) return defer(env, b.body, c);
        throw TypeMismatch("missing branch for " + v.to_string());
      });
      return bind(p, c, k);
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

std::vector<Diagnostic> check_env(const Env& env) { return Checker(env).run(); }

std::optional<Choice> synthesize(const Env& env, const Term& t) {
  std::set<std::string> visiting;
  return synth(env, t, visiting);
}

bool may_terminate(const Env& env, const Term& t) {
  std::set<std::string> visiting;
  return may_term(env, t, visiting);
}

Process elaborate(const Env& env, std::string_view name) {
  auto shared = std::make_shared<const Env>(env);
  const Definition* d = shared->find(name);
  if (!d) throw UnknownName("no definition named '" + std::string(name) + "'");
  return elab(shared, term::ref(d->name), d->annotation);
}

Process elaborate(const std::shared_ptr<const Env>& env, const Term& t, const Choice& ret) {
  return elab(env, t, ret);
}

}  // namespace mcsp
