#pragma once

// JSON forms of semantic results. Sets are emitted in their canonical order,
// so equal results print identically.

#include <set>
#include <vector>

#include "json.hpp"

#include "mcsp/failures.hpp"
#include "mcsp/lang.hpp"
#include "mcsp/laws.hpp"
#include "mcsp/lts.hpp"
#include "mcsp/traces.hpp"

namespace mcsp::json {

using nlohmann::json;

json labels(const std::vector<Label>& ls);
json labels(const std::set<Label>& ls);

/// {"labels": [...], "outcome": null | "<rendered value>"}
json trace(const Trace& t);
json traces(const TraceSet& s);

/// `refusedExample` is the largest refusal: `alphabet` minus the initials.
json failure(const StableFailure& f, const std::set<Label>& alphabet);
json failures(const FailureSet& s, const std::set<Label>& alphabet);

json divergence(const Divergence& d);
json divergences(const std::set<Divergence>& s);

json verdict(const TraceVerdict& v);
json verdict(const DivergenceVerdict& v);
json verdict(const FailureVerdict& v, const std::set<Label>& alphabet);
json verdict(const FdiVerdict& v, const std::set<Label>& alphabet);

json lts(const Lts& l);
json diagnostic(const Diagnostic& d);
json diagnostics(const std::vector<Diagnostic>& ds);
json law_report(const LawReport& r);

}  // namespace mcsp::json
