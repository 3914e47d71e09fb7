// csp: command-line front end for checking, exploring and stepping processes.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mcsp/failures.hpp"
#include "mcsp/json_io.hpp"
#include "mcsp/laws.hpp"
#include "mcsp/server.hpp"
#include "mcsp/session.hpp"

using namespace mcsp;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit status for a rejected program.
struct Rejected {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const std::vector<Diagnostic>& ds, bool as_json) {
  if (as_json) std::cout << json::diagnostics(ds).dump(2) << "\n";
  for (const auto& d : ds) std::cerr << format(d) << "\n";
}

Env load(const std::string& path, bool as_json) {
  std::vector<Diagnostic> ds;
  try {
    Env env = parse(read_file(path));
    ds = check_env(env);
    if (ds.empty()) return env;
  } catch (const ParseError& e) {
    ds.push_back(e.diagnostic());
  }
  report(ds, as_json);
  throw Rejected{kFail};
}

void require_name(const Env& env, const std::string& name) {
  if (!env.find(name)) throw Usage("no definition named '" + name + "'");
}

std::set<Label> alphabet_set(const Env& env) {
  auto a = alphabet(env);
  return {a.begin(), a.end()};
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
  std::string file;
  std::string name;
  std::string other;
  std::size_t depth = 4;
  std::size_t max_states = 10000;
  bool as_json = false;
  std::string model = "traces";
  std::string law;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string host = "127.0.0.1";
  int port = 8080;
};

ExploreLimits limits(const Options& o) { return ExploreLimits{o.max_states, ExploreLimits{}.max_depth}; }

int cmd_check(const Options& o) {
  Env env = load(o.file, o.as_json);
  if (o.as_json) emit(nlohmann::json::array());
  else std::cout << o.file << ": " << env.definitions().size() << " definitions, no errors\n";
  return kOk;
}

int cmd_traces(const Options& o) {
  Env env = load(o.file, o.as_json);
  require_name(env, o.name);
  emit(json::traces(trace_set(elaborate(env, o.name), o.depth)));
  return kOk;
}

int cmd_failures(const Options& o) {
  Env env = load(o.file, o.as_json);
  require_name(env, o.name);
  Lts lts = build_lts(env, o.name, limits(o));
  emit(json::failures(stable_failures(lts, o.depth), alphabet_set(env)));
  return kOk;
}

int cmd_divergences(const Options& o) {
  Env env = load(o.file, o.as_json);
  require_name(env, o.name);
  Lts lts = build_lts(env, o.name, limits(o));
  emit(json::divergences(divergences_of(lts, o.depth)));
  return kOk;
}

int cmd_refine(const Options& o) {
  Env env = load(o.file, o.as_json);
  require_name(env, o.name);
  require_name(env, o.other);
  Lts p = build_lts(env, o.name, limits(o));
  Lts q = build_lts(env, o.other, limits(o));
  if (!compatible(p.ret(), q.ret()))
    throw Usage("'" + o.name + "' returns " + p.ret().to_string() + " but '" + o.other + "' returns " +
                q.ret().to_string());
  bool holds;
  nlohmann::json out;
  if (o.model == "traces") {
    TraceVerdict v = trace_refines(p, q, o.depth);
    holds = v.holds;
    out = json::verdict(v);
  } else {
    FdiVerdict v = refines_fdi(p, q, o.depth);
    holds = v.holds();
    out = json::verdict(v, alphabet_set(env));
  }
  out["model"] = o.model;
  emit(out);
  return holds ? kOk : kFail;
}

int cmd_simulate(const Options& o) {
  Env env = load(o.file, false);
  require_name(env, o.name);
  Session s(std::make_shared<const Env>(std::move(env)), o.name);
  simulate(s, std::cin, std::cout);
  return kOk;
}

int cmd_laws(const Options& o) {
  std::vector<std::string> laws = o.law.empty() ? law_names() : std::vector<std::string>{o.law};
  bool ok = true;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& law : laws) {
    LawReport r = run_law(law, o.trials, o.seed, o.depth);
    ok = ok && r.passed();
    if (o.as_json) {
      out.push_back(json::law_report(r));
      continue;
    }
    std::cout << (r.passed() ? "pass " : "FAIL ") << r.law << ": " << r.trials << " trials, "
              << r.failures.size() << " failures" << (r.bounded ? " (bounded evidence)" : "") << "\n";
    for (const auto& f : r.failures)
      std::cout << "  seed " << f.seed << ": " << f.witness << "\n" << f.inputs << "\n";
  }
  if (o.as_json) emit(out);
  return ok ? kOk : kFail;
}

int cmd_serve(const Options& o) {
  ServerOptions so;
  so.lts_limits.max_states = o.max_states;
  return serve(o.host, o.port, so);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monadic CSP processes: check, explore, refine and simulate"};
  app.require_subcommand(1);
  Options o;

  auto file_arg = [&](CLI::App* c) { c->add_option("file", o.file, "definitions file")->required(); };
  auto name_arg = [&](CLI::App* c) { c->add_option("name", o.name, "definition to examine")->required(); };
  auto depth_opt = [&](CLI::App* c) {
    c->add_option("--depth,-d", o.depth, "exploration depth")->capture_default_str();
  };
  auto states_opt = [&](CLI::App* c) {
    c->add_option("--max-states", o.max_states, "state budget for explicit exploration")->capture_default_str();
  };
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.as_json, "machine-readable output"); };

  auto* check = app.add_subcommand("check", "parse and check a file; diagnostics on standard error");
  file_arg(check);
  json_flag(check);

  auto* traces = app.add_subcommand("traces", "trace set as JSON");
  auto* failures = app.add_subcommand("failures", "stable failures as JSON");
  auto* divergences = app.add_subcommand("divergences", "divergences as JSON");
  for (auto* c : {traces, failures, divergences}) {
    file_arg(c);
    name_arg(c);
    depth_opt(c);
    states_opt(c);
    json_flag(c);
  }

  auto* refine = app.add_subcommand("refine", "does NAME refine to OTHER (OTHER's behaviours within NAME's)");
  file_arg(refine);
  name_arg(refine);
  refine->add_option("other", o.other, "refining definition")->required();
  refine->add_option("--model", o.model, "traces or sf (stable failures with divergences)")
      ->check(CLI::IsMember({"traces", "sf"}))
      ->capture_default_str();
  depth_opt(refine);
  states_opt(refine);
  json_flag(refine);

  auto* sim = app.add_subcommand("simulate", "step through a process interactively");
  file_arg(sim);
  name_arg(sim);

  auto* laws = app.add_subcommand("laws", "run the seeded law suite");
  laws->add_option("--law", o.law, "single law to run")->check(CLI::IsMember(law_names()));
  laws->add_option("--trials", o.trials, "trials per law")->capture_default_str();
  laws->add_option("--seed", o.seed, "seed of the first trial")->capture_default_str();
  depth_opt(laws);
  json_flag(laws);

  auto* srv = app.add_subcommand("serve", "HTTP session API");
  srv->add_option("--port", o.port, "listening port")->capture_default_str();
  srv->add_option("--host", o.host, "listening address")->capture_default_str();
  states_opt(srv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*traces) return cmd_traces(o);
    if (*failures) return cmd_failures(o);
    if (*divergences) return cmd_divergences(o);
    if (*refine) return cmd_refine(o);
    if (*sim) return cmd_simulate(o);
    if (*laws) return cmd_laws(o);
    if (*srv) return cmd_serve(o);
  } catch (const Rejected& r) {
    return r.code;
  } catch (const Usage& e) {
    std::cerr << "csp: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "csp: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
