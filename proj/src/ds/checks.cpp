#include "wysx/ds.hpp"
#include "wysx/slice.hpp"

namespace wysx {

namespace {

Verdict verdict(Verdict::Status s, std::string detail) { return Verdict{s, std::move(detail)}; }

std::string show_trace(const Trace& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += "; ";
    if (const auto* m = std::get_if<TMsg>(&t[i].node)) {
      out += "TMsg " + show(m->v);
    } else {
      const auto& s = std::get<TScope>(t[i].node);
      out += "TScope " + s.ps.to_string() + " " + show_trace(s.t);
    }
  }
  return out + "]";
}

std::string describe_run(const DsRun& r) {
  if (r.status == DsRun::Status::OutOfFuel) return "out of fuel";
  return r.stuck.rule + ": " + r.stuck.reason;
}

}  // namespace

std::string to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Pass: return "PASS";
    case Verdict::Status::Fail: return "FAIL";
    case Verdict::Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict check_simulation(const ExprPtr& e, const Env& logical, const PrinSet& ps, std::size_t fuel,
                         SecBackend backend) {
  StRun st = st_run(e, logical, ps, fuel);
  if (st.status == StRun::Status::OutOfFuel) return verdict(Verdict::Status::Inconclusive, "ST run out of fuel");
  if (st.status == StRun::Status::Stuck) {
    return verdict(Verdict::Status::Inconclusive, "ST run stuck at " + st.stuck.rule + ": " + st.stuck.reason);
  }
  Protocol expected = slice_cfg(ps, st.final);

  DsRun ds = ds_run(e, slice_inputs(ps, logical), Scheduler::round_robin(), backend, fuel);
  if (ds.status == DsRun::Status::OutOfFuel) return verdict(Verdict::Status::Inconclusive, "DS run out of fuel");
  if (!ds.done()) return verdict(Verdict::Status::Fail, "DS run did not terminate: " + describe_run(ds));

  for (const auto& [p, want] : expected.par) {
    auto it = ds.final.par.find(p);
    if (it == ds.final.par.end()) return verdict(Verdict::Status::Fail, "missing party " + p.name);
    const Config& got = it->second;
    if (!(got.value() == want.value())) {
      return verdict(Verdict::Status::Fail,
                     p.name + ": value " + show(got.value()) + ", expected " + show(want.value()));
    }
    if (!(got.trace == want.trace)) {
      return verdict(Verdict::Status::Fail,
                     p.name + ": trace " + show_trace(got.trace) + ", expected " + show_trace(want.trace));
    }
    if (!(got == want)) return verdict(Verdict::Status::Fail, p.name + ": terminal configurations differ");
  }
  return verdict(Verdict::Status::Pass, "");
}

Verdict check_confluence(const ExprPtr& e, const Env& logical, const PrinSet& ps,
                         const std::vector<std::uint64_t>& seeds, std::size_t fuel, SecBackend backend) {
  auto inputs = slice_inputs(ps, logical);
  DsRun reference = ds_run(e, inputs, Scheduler::round_robin(), backend, fuel);
  if (reference.status == DsRun::Status::OutOfFuel) {
    return verdict(Verdict::Status::Inconclusive, "round-robin run out of fuel");
  }
  if (!reference.done()) {
    return verdict(Verdict::Status::Fail, "round-robin run did not terminate: " + describe_run(reference));
  }
  for (auto seed : seeds) {
    DsRun r = ds_run(e, inputs, Scheduler::seeded(seed), backend, fuel);
    if (r.status == DsRun::Status::OutOfFuel) {
      return verdict(Verdict::Status::Inconclusive, "seed " + std::to_string(seed) + " out of fuel");
    }
    if (!r.done()) {
      return verdict(Verdict::Status::Fail,
                     "seed " + std::to_string(seed) + " did not terminate: " + describe_run(r));
    }
    if (!(r.final == reference.final)) {
      return verdict(Verdict::Status::Fail, "seed " + std::to_string(seed) + " reached a different protocol");
    }
  }
  return verdict(Verdict::Status::Pass, "");
}

}  // namespace wysx
