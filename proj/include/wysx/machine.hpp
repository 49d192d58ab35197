#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "wysx/config.hpp"
#include "wysx/error.hpp"

namespace wysx {

/// One transition; `rule` names the rule that fired.
struct Next {
  Config config;
  std::string_view rule;
};

/// A terminal configuration: its value and accumulated trace.
struct Done {
  Value value;
  Trace trace;
};

/// No rule applies; `rule` names the rule whose side condition failed.
struct Stuck {
  std::string rule;
  std::string reason;
  Errc code = Errc::Stuck;
};

/// A local party waits at a fully evaluated `as_sec ps thunk`.
struct NeedsSec {
  PrinSet ps;
  Closure thunk;
};

using StepOutcome = std::variant<Next, Done, Stuck>;
using LocalOutcome = std::variant<Next, NeedsSec, Done, Stuck>;

/// Single-threaded semantics: exactly one rule applies to a non-terminal
/// configuration. A value with an empty stack is Done in either mode.
StepOutcome st_step(Config c);

/// Local semantics of party `p` (the configuration's mode is `Par {p}`).
LocalOutcome local_step(const Principal& p, Config c);

/// `can_seal s v`: `v` holds no share of another party set and no closure
/// capturing concrete secrets of parties outside `s`.
bool can_seal(const PrinSet& s, const Value& v);

/// Body environment of a thunk or function applied to `arg`: `L1[x -> arg]`,
/// plus the recursive binding of a fix closure.
Env thunk_env(const Closure& c, Value arg);

inline constexpr std::size_t kDefaultFuel = 1'000'000;

struct RunStats {
  std::size_t steps = 0;
  std::map<std::string, std::size_t, std::less<>> rules;  // firings per rule

  std::size_t count(std::string_view rule) const {
    auto it = rules.find(rule);
    return it == rules.end() ? 0 : it->second;
  }
};

struct StRun {
  enum class Status { Done, Stuck, OutOfFuel };
  Status status = Status::OutOfFuel;
  Config final;  // last configuration reached
  Stuck stuck;   // when status == Stuck
  RunStats stats;

  bool done() const { return status == Status::Done; }
  const Value& value() const { return final.value(); }
  const Trace& trace() const { return final.trace; }
};

/// Iterate st_step from `Par ps; ·; env; ·; e`.
StRun st_run(const ExprPtr& e, const Env& env, const PrinSet& ps, std::size_t fuel = kDefaultFuel);
StRun st_run_config(Config c, std::size_t fuel = kDefaultFuel);

}  // namespace wysx
