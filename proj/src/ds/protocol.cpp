#include <algorithm>

#include "wysx/ds.hpp"
#include "wysx/gmw.hpp"
#include "wysx/shares.hpp"
#include "wysx/slice.hpp"

namespace wysx {

namespace {

struct Action {
  enum class Kind { Exit, Sec, Enter, Par };
  Kind kind = Kind::Par;
  PrinSet s;    // Exit, Sec, Enter
  Principal p;  // Par
};

const PendingSec* waiting(const Config& c) { return std::get_if<PendingSec>(&c.term); }

bool finished(const Config& c) { return c.is_value() && c.stack.empty(); }

bool sec_done(const SecEntry& e) { return e.results.has_value() || finished(e.config); }

std::string describe_waits(const Protocol& pi) {
  std::string out;
  for (const auto& [p, c] : pi.par) {
    if (const auto* w = waiting(c)) out += " " + p.name + "@as_sec" + w->ps.to_string();
  }
  return out;
}

}  // namespace

ProtocolStepper::ProtocolStepper(Scheduler sched, SecBackend backend)
    : sched_(sched), backend_(backend), rng_(sched.seed) {}

ProtocolStepper::Result ProtocolStepper::step(Protocol& pi) {
  std::vector<Action> sec_actions;
  std::vector<Action> par_actions;

  for (const auto& [s, entry] : pi.sec) {
    sec_actions.push_back({sec_done(entry) ? Action::Kind::Exit : Action::Kind::Sec, s, {}});
  }

  std::map<PrinSet, std::vector<Principal>> groups;
  for (const auto& [p, c] : pi.par) {
    if (const auto* w = waiting(c)) {
      if (!pi.sec.contains(w->ps)) groups[w->ps].push_back(p);
    } else if (!finished(c)) {
      par_actions.push_back({Action::Kind::Par, {}, p});
    }
  }
  for (const auto& [s, members] : groups) {
    if (members.size() != s.size()) continue;
    // Every member of s waits at as_sec s: the bodies must agree.
    const Closure& first = waiting(pi.par.at(members.front()))->thunk;
    for (const auto& p : members) {
      const Closure& t = waiting(pi.par.at(p))->thunk;
      if (t.param != first.param || t.self != first.self || !same_expr(t.body, first.body)) {
        return {Result::Kind::Stuck, "P-enter",
                Stuck{"P-enter", "parties of " + s.to_string() + " wait at different secure blocks",
                      Errc::BodyMismatch}};
      }
    }
    sec_actions.push_back({Action::Kind::Enter, s, {}});
  }

  if (sec_actions.empty() && par_actions.empty()) {
    if (pi.terminal()) return {Result::Kind::Terminal, {}, {}};
    return {Result::Kind::Stuck, "P-enter", Stuck{"P-enter", "deadlock:" + describe_waits(pi), Errc::Stuck}};
  }

  Action chosen;
  if (sched_.kind == Scheduler::Kind::RoundRobin) {
    if (!sec_actions.empty()) {
      chosen = sec_actions.front();
    } else {
      std::vector<Principal> order;
      for (const auto& [p, c] : pi.par) order.push_back(p);
      std::size_t n = order.size();
      bool found = false;
      for (std::size_t i = 0; i < n && !found; ++i) {
        std::size_t idx = (cursor_ + i) % n;
        for (const auto& a : par_actions) {
          if (a.p == order[idx]) {
            chosen = a;
            cursor_ = idx + 1;
            found = true;
            break;
          }
        }
      }
    }
  } else {
    std::size_t total = sec_actions.size() + par_actions.size();
    std::uniform_int_distribution<std::size_t> pick(0, total - 1);
    std::size_t i = pick(rng_);
    chosen = i < sec_actions.size() ? sec_actions[i] : par_actions[i - sec_actions.size()];
  }

  switch (chosen.kind) {
    case Action::Kind::Par: {
      Config& c = pi.par.at(chosen.p);
      LocalOutcome out = local_step(chosen.p, std::move(c));
      if (auto* n = std::get_if<Next>(&out)) {
        c = std::move(n->config);
        ++stats_.par_steps;
        return {Result::Kind::Stepped, "P-par", {}};
      }
      if (auto* s = std::get_if<Stuck>(&out)) {
        return {Result::Kind::Stuck, "P-par", Stuck{chosen.p.name + ": " + s->rule, s->reason, s->code}};
      }
      return {Result::Kind::Stuck, "P-par", Stuck{"P-par", "unexpected local outcome", Errc::Stuck}};
    }
    case Action::Kind::Enter: {
      std::vector<Env> envs;
      for (const auto& p : chosen.s) envs.push_back(waiting(pi.par.at(p))->thunk.env);
      const Closure& t = waiting(pi.par.at(chosen.s.front()))->thunk;
      Closure joint;
      try {
        joint = Closure{combine_env(envs), t.param, t.body, t.self};
      } catch (const Error& e) {
        return {Result::Kind::Stuck, "P-enter", Stuck{"P-enter", e.what(), e.code()}};
      }
      Config c = Config::initial(Mode::sec(chosen.s), thunk_env(joint, Value::unit()), joint.body);
      c.shares = make_share_context(chosen.s, joint);
      pi.sec.emplace(chosen.s, SecEntry{std::move(c), std::nullopt});
      ++stats_.enters;
      return {Result::Kind::Stepped, "P-enter", {}};
    }
    case Action::Kind::Sec: {
      SecEntry& entry = pi.sec.at(chosen.s);
      ++stats_.sec_steps;
      if (backend_.kind == SecBackend::Kind::Gmw) {
        try {
          entry.results = gmw_run_block(entry.config, backend_.gmw);
        } catch (const Error& e) {
          return {Result::Kind::Stuck, "P-sec", Stuck{"P-sec", e.what(), e.code()}};
        }
        return {Result::Kind::Stepped, "P-sec", {}};
      }
      StepOutcome out = st_step(std::move(entry.config));
      if (auto* n = std::get_if<Next>(&out)) {
        entry.config = std::move(n->config);
        return {Result::Kind::Stepped, "P-sec", {}};
      }
      if (auto* s = std::get_if<Stuck>(&out)) return {Result::Kind::Stuck, "P-sec", *s};
      return {Result::Kind::Stuck, "P-sec", Stuck{"P-sec", "unexpected secure outcome", Errc::Stuck}};
    }
    case Action::Kind::Exit: {
      auto node = pi.sec.extract(chosen.s);
      SecEntry& entry = node.mapped();
      for (const auto& p : chosen.s) {
        Value v = entry.results ? entry.results->at(p) : slice_v(p, entry.config.value());
        Config& c = pi.par.at(p);
        c.trace.push_back(tmsg(v));
        c.term = std::move(v);
      }
      ++stats_.exits;
      return {Result::Kind::Stepped, "P-exit", {}};
    }
  }
  return {Result::Kind::Stuck, "P-par", Stuck{"P-par", "no action", Errc::Stuck}};
}

Protocol initial_protocol(const ExprPtr& e, const std::map<Principal, Env>& inputs) {
  Protocol pi;
  for (const auto& [p, env] : inputs) pi.par.emplace(p, Config::initial(Mode::par(PrinSet::singleton(p)), env, e));
  return pi;
}

std::map<Principal, Value> DsRun::values() const {
  std::map<Principal, Value> out;
  for (const auto& [p, c] : final.par) {
    if (c.is_value()) out.emplace(p, c.value());
  }
  return out;
}

std::map<Principal, Trace> DsRun::traces() const {
  std::map<Principal, Trace> out;
  for (const auto& [p, c] : final.par) out.emplace(p, c.trace);
  return out;
}

DsRun ds_run_protocol(Protocol pi, Scheduler sched, SecBackend backend, std::size_t fuel) {
  ProtocolStepper stepper(sched, backend);
  DsRun run;
  for (std::size_t i = 0;; ++i) {
    if (pi.terminal()) {
      run.status = DsRun::Status::Done;
      break;
    }
    if (i >= fuel) {
      run.status = DsRun::Status::OutOfFuel;
      break;
    }
    auto r = stepper.step(pi);
    if (r.kind == ProtocolStepper::Result::Kind::Terminal) {
      run.status = DsRun::Status::Done;
      break;
    }
    if (r.kind == ProtocolStepper::Result::Kind::Stuck) {
      run.status = DsRun::Status::Stuck;
      run.stuck = r.stuck;
      break;
    }
  }
  run.final = std::move(pi);
  run.stats = stepper.stats();
  return run;
}

DsRun ds_run(const ExprPtr& e, const std::map<Principal, Env>& inputs, Scheduler sched, SecBackend backend,
             std::size_t fuel) {
  return ds_run_protocol(initial_protocol(e, inputs), sched, backend, fuel);
}

std::map<Principal, Env> slice_inputs(const PrinSet& ps, const Env& logical) {
  std::map<Principal, Env> out;
  for (const auto& p : ps) out.emplace(p, slice_env(p, logical));
  return out;
}

}  // namespace wysx
