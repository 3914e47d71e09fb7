// Python access to the engine. Results cross the boundary in the same JSON
// shapes the CLI prints, converted to plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcsp/failures.hpp"
#include "mcsp/json_io.hpp"
#include "mcsp/laws.hpp"
#include "mcsp/session.hpp"

namespace py = pybind11;
using namespace mcsp;
using J = nlohmann::json;

namespace {

py::object to_py(const J& j) { return py::module_::import("json").attr("loads")(j.dump()); }

// Raised to Python as mcsp.SourceError carrying structured diagnostics.
struct Rejected : std::runtime_error {
  std::vector<Diagnostic> diags;
  explicit Rejected(std::vector<Diagnostic> ds)
      : std::runtime_error(ds.empty() ? "rejected" : format(ds.front())), diags(std::move(ds)) {}
};

Env load(const std::string& source) {
  std::vector<Diagnostic> ds;
  try {
    Env env = parse(source);
    ds = check_env(env);
    if (ds.empty()) return env;
  } catch (const ParseError& e) {
    ds.push_back(e.diagnostic());
  }
  throw Rejected(std::move(ds));
}

void require(const Env& env, const std::string& name) {
  if (!env.find(name)) throw py::key_error("no definition named '" + name + "'");
}

std::set<Label> alphabet_set(const Env& env) {
  auto a = alphabet(env);
  return {a.begin(), a.end()};
}

ExploreLimits limits(std::size_t max_states) { return ExploreLimits{max_states, ExploreLimits{}.max_depth}; }

py::object check(const std::string& source) {
  std::vector<Diagnostic> ds;
  try {
    ds = check_env(parse(source));
  } catch (const ParseError& e) {
    ds.push_back(e.diagnostic());
  }
  return to_py(json::diagnostics(ds));
}

py::object traces(const std::string& source, const std::string& name, std::size_t depth) {
  Env env = load(source);
  require(env, name);
  return to_py(json::traces(trace_set(elaborate(env, name), depth)));
}

py::object failures(const std::string& source, const std::string& name, std::size_t depth, std::size_t max_states) {
  Env env = load(source);
  require(env, name);
  return to_py(json::failures(stable_failures(build_lts(env, name, limits(max_states)), depth), alphabet_set(env)));
}

py::object divergences(const std::string& source, const std::string& name, std::size_t depth,
                       std::size_t max_states) {
  Env env = load(source);
  require(env, name);
  return to_py(json::divergences(divergences_of(build_lts(env, name, limits(max_states)), depth)));
}

py::object refine(const std::string& source, const std::string& spec, const std::string& impl,
                  const std::string& model, std::size_t depth, std::size_t max_states) {
  if (model != "traces" && model != "sf") throw py::value_error("model must be 'traces' or 'sf'");
  Env env = load(source);
  require(env, spec);
  require(env, impl);
  Lts p = build_lts(env, spec, limits(max_states));
  Lts q = build_lts(env, impl, limits(max_states));
  if (!compatible(p.ret(), q.ret()))
    throw py::type_error("'" + spec + "' returns " + p.ret().to_string() + " but '" + impl + "' returns " +
                         q.ret().to_string());
  J out = model == "traces" ? json::verdict(trace_refines(p, q, depth))
                            : json::verdict(refines_fdi(p, q, depth), alphabet_set(env));
  out["model"] = model;
  return to_py(out);
}

py::object lts(const std::string& source, const std::string& name, std::size_t max_states) {
  Env env = load(source);
  require(env, name);
  return to_py(json::lts(build_lts(env, name, limits(max_states))));
}

py::object run(const std::string& law, std::size_t trials, std::uint64_t seed, std::size_t depth) {
  return to_py(json::law_report(run_law(law, trials, seed, depth)));
}

Session open_session(const std::string& source, const std::string& name) {
  Env env = load(source);
  require(env, name);
  return Session(std::make_shared<const Env>(std::move(env)), name);
}

}  // namespace

PYBIND11_MODULE(_mcsp, m) {
  m.doc() = "Monadic CSP processes: traces, stable failures, divergences, refinement and stepping.";

  static py::exception<Rejected> source_error(m, "SourceError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Rejected& r) {
      py::object err = source_error;
      py::object exc = err(r.what());
      exc.attr("diagnostics") = to_py(json::diagnostics(r.diags));
      PyErr_SetObject(err.ptr(), exc.ptr());
    } catch (const InvalidChoice& e) {
      PyErr_SetString(PyExc_IndexError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def("check", &check, py::arg("source"), "Diagnostics for a program; empty when it is accepted.");
  m.def("traces", &traces, py::arg("source"), py::arg("name"), py::arg("depth") = 4);
  m.def("failures", &failures, py::arg("source"), py::arg("name"), py::arg("depth") = 4,
        py::arg("max_states") = 10000);
  m.def("divergences", &divergences, py::arg("source"), py::arg("name"), py::arg("depth") = 4,
        py::arg("max_states") = 10000);
  m.def("refine", &refine, py::arg("source"), py::arg("spec"), py::arg("impl"), py::arg("model") = "traces",
        py::arg("depth") = 4, py::arg("max_states") = 10000,
        "Whether impl's behaviours are within spec's.");
  m.def("lts", &lts, py::arg("source"), py::arg("name"), py::arg("max_states") = 10000);
  m.def("run_law", &run, py::arg("law"), py::arg("trials") = 100, py::arg("seed") = 1, py::arg("depth") = 4);
  m.def("law_names", &law_names);

  py::class_<Session>(m, "Session")
      .def(py::init(&open_session), py::arg("source"), py::arg("name"))
      .def_property_readonly("term", &Session::term)
      .def_property_readonly("steps", &Session::steps)
      .def_property_readonly("trace", [](const Session& s) {
        std::vector<std::string> out;
        for (const auto& l : s.trace()) out.push_back(l.name());
        return out;
      })
      .def("state", [](const Session& s) { return to_py(s.state_json()); })
      .def(
          "step",
          [](Session& s, const std::string& kind, std::size_t index) {
            auto k = parse_step_kind(kind);
            if (!k) throw py::value_error("kind must be 'ext', 'int' or 'tick'");
            s.step(*k, index);
            return to_py(s.state_json());
          },
          py::arg("kind"), py::arg("index"))
      .def("undo", &Session::undo);
}
