#pragma once

// Interactive stepping through a process. The user plays scheduler: external,
// internal and ✓ choices are all selectable.

#include <chrono>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mcsp/lang.hpp"
#include "mcsp/lts.hpp"

namespace mcsp {

enum class StepKind { Ext, Int, Tick };

std::string to_string(StepKind k);
std::optional<StepKind> parse_step_kind(std::string_view s);

/// Thrown for a step that the current state does not offer.
class InvalidChoice : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct SessionChoice {
  StepKind kind;
  std::size_t index;
  std::optional<Label> label;  // ext
  std::optional<Value> value;  // int: branch element; tick: return value
};

class Session {
 public:
  /// Elaborates `name` in `env`; the env must have passed check_env.
  Session(std::shared_ptr<const Env> env, std::string name);

  /// Parses and checks `source`; throws ParseError on the first syntax or
  /// duplicate error and SourceRejected for checker diagnostics.
  static Session from_source(const std::string& source, const std::string& name);

  const Env& env() const { return *env_; }
  const std::string& name() const { return name_; }
  const Process& initial() const { return history_.front().process; }
  const Process& current() const { return history_.back().process; }
  std::optional<Value> terminated_with() const { return history_.back().outcome; }

  /// Canonical printed term of the current state.
  std::string term() const;
  std::vector<SessionChoice> choices() const;
  std::vector<Label> trace() const;
  bool stable() const;
  std::set<Label> initials() const;
  /// Alphabet minus initials: the largest set refused here when stable.
  std::set<Label> refusal_complement() const;

  void step(StepKind kind, std::size_t index);
  /// False when there is nothing to undo.
  bool undo();
  std::size_t steps() const { return history_.size() - 1; }

  nlohmann::json state_json() const;

 private:
  struct Entry {
    Process process;
    std::optional<Label> label;    // visible step into this entry
    std::optional<Value> outcome;  // set once a ✓ was taken
  };

  std::shared_ptr<const Env> env_;
  std::string name_;
  std::set<Label> alphabet_;
  std::vector<Entry> history_;
};

/// Terminal loop: lists the choices, reads a selection number or one of
/// `undo`, `trace`, `refusals`, `help`, `quit`. Invalid input re-prompts.
/// Returns at end of input or on `quit`.
void simulate(Session& s, std::istream& in, std::ostream& out);

/// Checker diagnostics that prevented a session from starting.
class SourceRejected : public Error {
 public:
  explicit SourceRejected(std::vector<Diagnostic> ds);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

/// Sessions by opaque id, each guarded by its own mutex, dropped after an
/// idle period.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(Clock::duration ttl = std::chrono::minutes(30));

  struct Handle {
    std::shared_ptr<std::mutex> lock;
    std::shared_ptr<Session> session;
  };

  std::string create(Session s);
  /// Refreshes the idle timer. Empty when unknown or expired.
  std::optional<Handle> find(const std::string& id);
  bool erase(const std::string& id);
  std::size_t size();
  /// Drops sessions idle for longer than the TTL.
  void sweep();

 private:
  struct Slot {
    Handle handle;
    Clock::time_point last_used;
  };

  std::string fresh_id();

  Clock::duration ttl_;
  std::mutex mu_;
  std::map<std::string, Slot> slots_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
};

}  // namespace mcsp
