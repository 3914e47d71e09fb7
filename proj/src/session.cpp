#include "mcsp/session.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include "mcsp/failures.hpp"
#include "mcsp/json_io.hpp"

namespace mcsp {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Ext: return "ext";
    case StepKind::Int: return "int";
    case StepKind::Tick: return "tick";
  }
  return "?";
}

std::optional<StepKind> parse_step_kind(std::string_view s) {
  if (s == "ext") return StepKind::Ext;
  if (s == "int") return StepKind::Int;
  if (s == "tick") return StepKind::Tick;
  return std::nullopt;
}

namespace {

std::string join(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += (out.empty() ? "" : "\n") + format(d);
  return out;
}

}  // namespace

SourceRejected::SourceRejected(std::vector<Diagnostic> ds) : Error(join(ds)), diags_(std::move(ds)) {}

Session::Session(std::shared_ptr<const Env> env, std::string name)
    : env_(std::move(env)), name_(std::move(name)) {
  for (const auto& l : alphabet(*env_)) alphabet_.insert(l);
  history_.push_back(Entry{elaborate(*env_, name_), std::nullopt, std::nullopt});
}

Session Session::from_source(const std::string& source, const std::string& name) {
  auto env = std::make_shared<const Env>(parse(source));
  auto diags = check_env(*env);
  if (diags.empty() && !env->find(name))
    diags.push_back(Diagnostic{DiagnosticKind::UnknownName, "no definition named '" + name + "'", {}, name});
  if (!diags.empty()) throw SourceRejected(std::move(diags));
  return Session(std::move(env), name);
}

std::string Session::term() const { return pretty(canonicalize(current().term(), *env_)); }

std::vector<SessionChoice> Session::choices() const {
  std::vector<SessionChoice> out;
  if (terminated_with()) return out;
  const Process& p = current();
  if (p.is_terminated()) {
    out.push_back({StepKind::Tick, 0, std::nullopt, p.value()});
    return out;
  }
  const ProcessNode& n = p.node();
  for (std::size_t i = 0; i < n.ext().size(); ++i)
    out.push_back({StepKind::Ext, i, n.labels().at_index(i), std::nullopt});
  auto branches = enumerate(n.int_index());
  for (std::size_t i = 0; i < n.internal().size(); ++i)
    out.push_back({StepKind::Int, i, std::nullopt, branches[i]});
  for (std::size_t i = 0; i < n.ticks().size(); ++i)
    out.push_back({StepKind::Tick, i, std::nullopt, n.ticks().at_index(i)});
  return out;
}

std::vector<Label> Session::trace() const {
  std::vector<Label> out;
  for (const auto& e : history_)
    if (e.label) out.push_back(*e.label);
  return out;
}

bool Session::stable() const { return terminated_with() || is_stable(current()); }

std::set<Label> Session::initials() const {
  if (terminated_with()) return {};
  return mcsp::initials(current());
}

std::set<Label> Session::refusal_complement() const {
  std::set<Label> in = initials();
  std::set<Label> out;
  for (const auto& l : alphabet_)
    if (!in.count(l)) out.insert(l);
  return out;
}

void Session::step(StepKind kind, std::size_t index) {
  for (const auto& c : choices()) {
    if (c.kind != kind || c.index != index) continue;
    const Process& p = current();
    switch (kind) {
      case StepKind::Ext:
        history_.push_back(Entry{p.node().ext().at_index(index).force(), c.label, std::nullopt});
        return;
      case StepKind::Int:
        history_.push_back(Entry{p.node().internal().at_index(index).force(), std::nullopt, std::nullopt});
        return;
      case StepKind::Tick:
        history_.push_back(Entry{Process::terminated(p.ret(), *c.value), std::nullopt, c.value});
        return;
    }
  }
  throw InvalidChoice("no " + to_string(kind) + " choice with index " + std::to_string(index));
}

bool Session::undo() {
  if (history_.size() < 2) return false;
  history_.pop_back();
  return true;
}

nlohmann::json Session::state_json() const {
  using J = nlohmann::json;
  J choices = J::array();
  for (const auto& c : this->choices()) {
    J j{{"kind", to_string(c.kind)}, {"index", c.index}};
    if (c.label) j["label"] = c.label->name();
    if (c.value) j["value"] = c.value->to_string();
    choices.push_back(std::move(j));
  }
  auto done = terminated_with();
  return J{{"name", name_},
           {"term", term()},
           {"status", done ? "terminated" : "running"},
           {"value", done ? J(done->to_string()) : J(nullptr)},
           {"choices", choices},
           {"historyTrace", json::labels(trace())},
           {"steps", steps()},
           {"initials", json::labels(initials())},
           {"stable", stable()},
           {"refusalComplement", json::labels(refusal_complement())}};
}

namespace {

std::string braces(const std::set<Label>& ls) {
  std::string out = "{";
  for (const auto& l : ls) out += (out.size() > 1 ? ", " : "") + l.name();
  return out + "}";
}

void show(const Session& s, std::ostream& out) {
  out << "state: " << s.term() << "\n";
  if (auto v = s.terminated_with()) {
    out << "terminated with " << v->to_string() << "\n";
    return;
  }
  auto cs = s.choices();
  if (cs.empty()) out << "  (no choices: deadlock)\n";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    out << "  [" << i + 1 << "] " << to_string(cs[i].kind);
    if (cs[i].label) out << " " << cs[i].label->name();
    if (cs[i].value) out << " " << cs[i].value->to_string();
    out << "\n";
  }
}

}  // namespace

void simulate(Session& s, std::istream& in, std::ostream& out) {
  show(s, out);
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream words(line);
    std::string cmd;
    if (!(words >> cmd)) continue;
    if (cmd == "quit" || cmd == "q") return;
    if (cmd == "help") {
      out << "number: take that choice; undo; trace; refusals; quit\n";
    } else if (cmd == "undo") {
      if (s.undo()) show(s, out);
      else out << "nothing to undo\n";
    } else if (cmd == "trace") {
      out << "trace: [";
      auto t = s.trace();
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? ", " : "") << t[i].name();
      out << "]";
      if (auto v = s.terminated_with()) out << " terminated with " << v->to_string();
      out << "\n";
    } else if (cmd == "refusals") {
      if (s.stable()) out << "refusals: any subset of " << braces(s.refusal_complement()) << "\n";
      else out << "not stable: refusals are only observed at stable states\n";
    } else {
      std::size_t n = 0;
      auto cs = s.choices();
      try {
        std::size_t used = 0;
        n = std::stoul(cmd, &used);
        if (used != cmd.size()) n = 0;
      } catch (const std::exception&) {
        n = 0;
      }
      if (n == 0 || n > cs.size()) {
        out << "invalid selection '" << cmd << "'; type help\n";
        continue;
      }
      s.step(cs[n - 1].kind, cs[n - 1].index);
      show(s, out);
    }
  }
}

SessionStore::SessionStore(Clock::duration ttl) : ttl_(ttl), salt_(std::random_device{}()) {
  salt_ = (salt_ << 32) ^ std::random_device{}();
}

std::string SessionStore::fresh_id() {
  std::mt19937_64 rng(salt_ ^ (++counter_ * 0x9e3779b97f4a7c15ULL));
  static const char* hex = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 2; ++i) {
    std::uint64_t x = rng();
    for (int k = 0; k < 16; ++k, x >>= 4) id += hex[x & 15];
  }
  return id;
}

std::string SessionStore::create(Session s) {
  std::lock_guard<std::mutex> g(mu_);
  std::string id = fresh_id();
  while (slots_.count(id)) id = fresh_id();
  slots_.emplace(id, Slot{Handle{std::make_shared<std::mutex>(), std::make_shared<Session>(std::move(s))},
                          Clock::now()});
  return id;
}

std::optional<SessionStore::Handle> SessionStore::find(const std::string& id) {
  std::lock_guard<std::mutex> g(mu_);
  auto it = slots_.find(id);
  if (it == slots_.end()) return std::nullopt;
  auto now = Clock::now();
  if (now - it->second.last_used > ttl_) {
    slots_.erase(it);
    return std::nullopt;
  }
  it->second.last_used = now;
  return it->second.handle;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard<std::mutex> g(mu_);
  return slots_.erase(id) > 0;
}

std::size_t SessionStore::size() {
  std::lock_guard<std::mutex> g(mu_);
  return slots_.size();
}

void SessionStore::sweep() {
  std::lock_guard<std::mutex> g(mu_);
  auto now = Clock::now();
  for (auto it = slots_.begin(); it != slots_.end();)
    it = now - it->second.last_used > ttl_ ? slots_.erase(it) : std::next(it);
}

}  // namespace mcsp
