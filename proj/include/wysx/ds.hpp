#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wysx/config.hpp"
#include "wysx/machine.hpp"

namespace wysx {

struct Scheduler {
  enum class Kind { RoundRobin, SeededRandom };
  Kind kind = Kind::RoundRobin;
  std::uint64_t seed = 0;

  static Scheduler round_robin() { return {}; }
  static Scheduler seeded(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
};

struct GmwOptions {
  unsigned width = 32;  // bits per integer in circuits
  std::uint64_t dealer_seed = 1;
};

struct SecBackend {
  enum class Kind { Ideal, Gmw };
  Kind kind = Kind::Ideal;
  GmwOptions gmw;

  static SecBackend ideal() { return {}; }
  static SecBackend with_gmw(GmwOptions o) { return {Kind::Gmw, o}; }
};

struct ProtocolStats {
  std::size_t par_steps = 0;
  std::size_t enters = 0;
  std::size_t sec_steps = 0;
  std::size_t exits = 0;

  std::size_t total() const { return par_steps + enters + sec_steps + exits; }
};

/// One protocol transition under a scheduler. Holds the scheduler state
/// (round-robin cursor, PRNG) across steps.
class ProtocolStepper {
public:
  ProtocolStepper(Scheduler sched, SecBackend backend);

  struct Result {
    enum class Kind { Stepped, Terminal, Stuck };
    Kind kind = Kind::Stepped;
    std::string rule;  // P-par, P-enter, P-sec or P-exit
    Stuck stuck;
  };

  /// Applies one enabled rule to `pi` in place.
  Result step(Protocol& pi);

  const ProtocolStats& stats() const { return stats_; }

private:
  Scheduler sched_;
  SecBackend backend_;
  std::mt19937_64 rng_;
  std::size_t cursor_ = 0;
  ProtocolStats stats_;
};

/// `P[p] = Par {p}; ·; inputs[p]; ·; e` for every party, no secure blocks.
Protocol initial_protocol(const ExprPtr& e, const std::map<Principal, Env>& inputs);

struct DsRun {
  enum class Status { Done, Stuck, OutOfFuel };
  Status status = Status::OutOfFuel;
  Protocol final;
  Stuck stuck;
  ProtocolStats stats;

  bool done() const { return status == Status::Done; }
  std::map<Principal, Value> values() const;
  std::map<Principal, Trace> traces() const;
};

/// Iterate protocol steps. `inputs[p]` is p's slice of a common logical env;
/// parties are the keys of `inputs`. Fuel bounds the number of protocol
/// steps.
DsRun ds_run(const ExprPtr& e, const std::map<Principal, Env>& inputs, Scheduler sched = {},
             SecBackend backend = {}, std::size_t fuel = kDefaultFuel);
DsRun ds_run_protocol(Protocol pi, Scheduler sched = {}, SecBackend backend = {},
                      std::size_t fuel = kDefaultFuel);

/// Per-party slices of a logical environment.
std::map<Principal, Env> slice_inputs(const PrinSet& ps, const Env& logical);

struct Verdict {
  enum class Status { Pass, Fail, Inconclusive };
  Status status = Status::Pass;
  std::string detail;

  bool pass() const { return status == Status::Pass; }
};

std::string to_string(Verdict::Status s);

/// ST run, then DS run from the sliced inputs; the terminal DS protocol must
/// equal the slice of the terminal ST configuration.
Verdict check_simulation(const ExprPtr& e, const Env& logical, const PrinSet& ps,
                         std::size_t fuel = kDefaultFuel, SecBackend backend = {});

/// Round-robin plus one seeded random schedule per seed; every terminal
/// protocol must be identical.
Verdict check_confluence(const ExprPtr& e, const Env& logical, const PrinSet& ps,
                         const std::vector<std::uint64_t>& seeds, std::size_t fuel = kDefaultFuel,
                         SecBackend backend = {});

}  // namespace wysx
