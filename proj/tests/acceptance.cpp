// Acceptance suite: one PASS/FAIL line per criterion, with timing. Exits
// nonzero when any criterion fails or exceeds its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "support/generators.hpp"
#include "wysx/apps.hpp"
#include "wysx/circuit.hpp"
#include "wysx/ds.hpp"
#include "wysx/error.hpp"
#include "wysx/gmw.hpp"
#include "wysx/oracles.hpp"
#include "wysx/sexpr.hpp"
#include "wysx/slice.hpp"
#include "wysx/suites.hpp"

namespace {

using namespace wysx;
using oracle::IntList;
using oracle::Pair;

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome pass(std::string d) { return {true, std::move(d)}; }
Outcome fail(std::string d) { return {false, std::move(d)}; }

std::string show_list(const IntList& l) {
  std::string s = "[";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "]";
}

std::vector<std::pair<Pair, Pair>> median_inputs(int lo, int hi) {
  std::vector<Pair> pairs;
  for (int x = lo; x <= hi; ++x) {
    for (int y = x + 1; y <= hi; ++y) pairs.emplace_back(x, y);
  }
  std::vector<std::pair<Pair, Pair>> out;
  for (const auto& a : pairs) {
    for (const auto& b : pairs) {
      if (oracle::median_pre(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

// 1. Distributed runs agree with the sliced single-threaded run.
Outcome simulation() {
  std::size_t cases = 0;
  for (const auto& c : apps::corpus_cases()) {
    Verdict v = check_simulation(apps::program(c.program), c.logical, c.parties);
    if (!v.pass()) return fail(c.program + " " + c.label + ": " + to_string(v.status) + " " + v.detail);
    ++cases;
  }
  testing::Rng rng(2024);
  std::size_t generated = 0, with_sec = 0;
  for (int i = 0; i < 200; ++i) {
    PrinSet u = i % 2 == 0 ? PrinSet{"a", "b"} : PrinSet{"a", "b", "c"};
    ExprPtr e = testing::random_program(rng, 5, u);
    Env env = testing::random_inputs(rng, u);
    Verdict v = check_simulation(e, env, u);
    if (!v.pass()) return fail("generated program " + print_expr(e) + ": " + to_string(v.status) + " " + v.detail);
    ++generated;
    if (print_expr(e).find("as_sec") != std::string::npos) ++with_sec;
  }
  return pass(std::to_string(cases) + " corpus cases, " + std::to_string(generated) + " generated programs (" +
              std::to_string(with_sec) + " with secure blocks)");
}

// 2. Every seeded schedule reaches the same terminal protocol.
Outcome confluence() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 100; ++s) seeds.push_back(s);
  std::set<std::string> programs;
  std::size_t cases = 0;
  for (const auto& c : apps::corpus_cases()) {
    Verdict v = check_confluence(apps::program(c.program), c.logical, c.parties, seeds);
    if (!v.pass()) return fail(c.program + " " + c.label + ": " + to_string(v.status) + " " + v.detail);
    programs.insert(c.program);
    ++cases;
  }
  return pass(std::to_string(cases) + " cases over " + std::to_string(programs.size()) + " programs x 100 seeds");
}

// 3. Median values and traces against the oracle.
Outcome median_correctness() {
  std::size_t n = 0;
  for (const auto& [a, b] : median_inputs(1, 8)) {
    std::int64_t m = oracle::median_of(a, b);
    Env env = apps::median_inputs(a, b);
    StRun r1 = apps::run_st("median", env, apps::parties_ab());
    StRun r2 = apps::run_st("median_opt", env, apps::parties_ab());
    std::string at = "(" + std::to_string(a.first) + "," + std::to_string(a.second) + ") (" +
                     std::to_string(b.first) + "," + std::to_string(b.second) + ")";
    if (!(r1.value() == Value::integer(m))) return fail("median value at " + at);
    if (!(r2.value() == Value::integer(m))) return fail("median_opt value at " + at);
    if (!(r1.trace() == oracle::median_trace(m))) return fail("median trace at " + at);
    if (!(r2.trace() == oracle::opt_trace(a, b, m))) return fail("median_opt trace at " + at);
    ++n;
  }
  return pass(std::to_string(n) + " input pairs");
}

// 4. Delimited release, with a leaky trace model as negative control.
Outcome delimited_release() {
  Verdict v = apps::check_median_security(1, 8);
  if (!v.pass()) return fail(v.detail);
  apps::MedianTraceFn leaky = [](Pair a, Pair b) { return oracle::opt_trace_leaky(a, b, oracle::median_of(a, b)); };
  std::string control;
  for (apps::Side side : {apps::Side::Alice, apps::Side::Bob}) {
    Verdict c = apps::check_median_release(1, 8, side, leaky);
    const char* name = side == apps::Side::Alice ? "alice" : "bob";
    if (c.status != Verdict::Status::Fail) return fail(std::string("negative control found no counterexample for ") + name);
    control += std::string(control.empty() ? "" : "; ") + name + " control: " + c.detail;
  }
  return pass("no counterexample; " + control);
}

// 5. Psi-permutation and reconstruction of the optimized trace.
Outcome psi_security() {
  Verdict v = apps::check_psi_security(3, 1, 5);
  if (!v.pass()) return fail(v.detail);
  return pass(v.detail);
}

// Comparison bits observed by the ST run of a psi program.
std::vector<bool> observed_bits(const StRun& r) {
  std::vector<bool> out;
  for (const auto& m : messages(r.trace())) {
    if (const auto* b = m.get_if<Bool>()) out.push_back(b->b);
  }
  return out;
}

// 6. Comparison counts of the naive and optimized loops.
Outcome psi_counts() {
  auto lists = apps::distinct_lists(3, 1, 5);
  std::size_t n = 0, strict = 0;
  for (const auto& la : lists) {
    for (const auto& lb : lists) {
      Env env = apps::psi_elem_inputs(la, lb);
      StRun naive = apps::run_st("psi_interim", env, apps::parties_ab());
      StRun opt = apps::run_st("psi_opt", env, apps::parties_ab());
      std::size_t cn = naive.stats.count("S-assec"), co = opt.stats.count("S-assec");
      std::string at = "la=" + show_list(la) + " lb=" + show_list(lb);
      if (cn != la.size() * lb.size()) return fail("naive count " + std::to_string(cn) + " at " + at);
      if (co > cn) return fail("optimized count exceeds naive at " + at);
      bool skips = false;  // some match is followed by a later la element or a later lb element
      for (std::size_t i = 0; i < la.size(); ++i) {
        for (std::size_t j = 0; j < lb.size(); ++j) {
          if (la[i] == lb[j] && (i + 1 < la.size() || j + 1 < lb.size())) skips = true;
        }
      }
      if (skips != (co < cn)) return fail(std::string(skips ? "no saving despite a skippable match" : "unexpected saving") + " at " + at);
      if (co < cn) ++strict;
      if (observed_bits(naive) != oracle::trace_psi(la, lb)) return fail("naive trace differs from oracle at " + at);
      if (observed_bits(opt) != oracle::trace_psi_opt(la, lb)) return fail("optimized trace differs from oracle at " + at);
      ++n;
    }
  }
  std::string perfect;
  for (std::size_t len = 0; len <= 5; ++len) {
    IntList l;
    for (std::size_t i = 1; i <= len; ++i) l.push_back(static_cast<std::int64_t>(i));
    auto c = apps::psi_comparison_count(l, l);
    if (c.optimized != len || c.naive != len * len) {
      return fail("la=lb of length " + std::to_string(len) + ": " + std::to_string(c.optimized) + " vs " +
                  std::to_string(c.naive));
    }
    perfect += (len ? " " : "") + std::to_string(c.optimized) + "/" + std::to_string(c.naive);
  }
  return pass(std::to_string(n) + " list pairs (" + std::to_string(strict) + " strictly cheaper); la=lb n=0..5 optimized/naive: " + perfect);
}

struct GmwCase {
  std::string program, label;
  PrinSet parties;
  Env logical;
};

std::string compare_backends(const GmwCase& c, unsigned width, std::uint64_t dealer) {
  auto inputs = slice_inputs(c.parties, c.logical);
  ExprPtr e = apps::program(c.program);
  DsRun ideal = ds_run(e, inputs);
  DsRun gmw = ds_run(e, inputs, Scheduler::round_robin(), SecBackend::with_gmw({width, dealer}));
  std::string at = c.program + " " + c.label + " (w=" + std::to_string(width) + ", dealer " + std::to_string(dealer) + ")";
  if (!ideal.done()) return "ideal run failed at " + at + ": " + ideal.stuck.reason;
  if (!gmw.done()) return "gmw run failed at " + at + ": " + gmw.stuck.rule + " " + gmw.stuck.reason;
  if (gmw.values() != ideal.values()) return "values differ at " + at;
  if (gmw.traces() != ideal.traces()) return "traces differ at " + at;
  return {};
}

std::vector<GmwCase> width4_cases() {
  std::vector<GmwCase> out;
  for (const auto& [a, b] : median_inputs(1, 7)) {
    std::string label = std::to_string(a.first) + "," + std::to_string(a.second) + "/" + std::to_string(b.first) +
                        "," + std::to_string(b.second);
    out.push_back({"median", label, apps::parties_ab(), apps::median_inputs(a, b)});
    out.push_back({"median_opt", label, apps::parties_ab(), apps::median_inputs(a, b)});
  }
  auto lists = apps::distinct_lists(2, 1, 5);
  for (const auto& la : lists) {
    for (const auto& lb : lists) {
      std::string label = show_list(la) + " " + show_list(lb);
      out.push_back({"psi", label, apps::parties_ab(), apps::psi_inputs(la, lb)});
      out.push_back({"psi_interim", label, apps::parties_ab(), apps::psi_elem_inputs(la, lb)});
      out.push_back({"psi_opt", label, apps::parties_ab(), apps::psi_elem_inputs(la, lb)});
    }
  }
  for (const auto& h : apps::distinct_lists(2, 0, 7)) {
    for (int card = 0; card <= 7; ++card) {
      out.push_back({"check_fresh", show_list(h) + " " + std::to_string(card), apps::parties_abc(),
                     apps::check_fresh_inputs(h, card)});
    }
  }
  return out;
}

std::vector<GmwCase> width32_cases(std::size_t count) {
  std::mt19937_64 rng(77);
  auto big = [&] { return std::uniform_int_distribution<std::int64_t>(-(1 << 30), 1 << 30)(rng); };
  auto list = [&](std::size_t max_len) {
    std::set<std::int64_t> s;
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    while (s.size() < len) s.insert(big());
    IntList l(s.begin(), s.end());
    std::shuffle(l.begin(), l.end(), rng);
    return l;
  };
  std::vector<GmwCase> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    std::string label = "random #" + std::to_string(i);
    switch (i % 7) {
      case 0:
      case 1: {
        IntList v = list(0);
        std::set<std::int64_t> s;
        while (s.size() < 4) s.insert(big());
        IntList d(s.begin(), s.end());
        std::shuffle(d.begin(), d.end(), rng);
        Pair a{std::min(d[0], d[1]), std::max(d[0], d[1])}, b{std::min(d[2], d[3]), std::max(d[2], d[3])};
        out.push_back({i % 7 == 0 ? "median" : "median_opt", label, apps::parties_ab(), apps::median_inputs(a, b)});
        break;
      }
      case 2: {
        IntList la = list(3), lb = list(3);
        if (!la.empty() && !lb.empty()) lb[0] = la[0];  // make matches likely
        out.push_back({"psi", label, apps::parties_ab(), apps::psi_inputs(la, lb)});
        break;
      }
      case 3:
      case 4: {
        IntList la = list(3), lb = list(3);
        if (!la.empty() && !lb.empty()) lb.back() = la.front();
        std::set<std::int64_t> sb(lb.begin(), lb.end());
        if (sb.size() != lb.size()) lb.pop_back();
        out.push_back({i % 7 == 3 ? "psi_interim" : "psi_opt", label, apps::parties_ab(), apps::psi_elem_inputs(la, lb)});
        break;
      }
      case 5: {
        std::set<std::int64_t> s;
        std::size_t len = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        while (s.size() < len) s.insert(std::uniform_int_distribution<std::int64_t>(0, 51)(rng));
        IntList h(s.begin(), s.end());
        std::int64_t card = std::uniform_int_distribution<std::int64_t>(0, 51)(rng);
        out.push_back({"check_fresh", label, apps::parties_abc(), apps::check_fresh_inputs(h, card, rng())});
        break;
      }
      default: {
        std::array<std::int64_t, 3> seeds{big(), big(), big()};
        std::vector<Value> dealt;
        std::size_t len = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        for (std::size_t k = 0; k < len; ++k) {
          dealt.push_back(apps::share_of(std::uniform_int_distribution<std::int64_t>(0, 51)(rng), apps::parties_abc(), rng()));
        }
        out.push_back({"deal", label, apps::parties_abc(),
                       apps::deal_inputs(Value::list(dealt), seeds, std::uniform_int_distribution<std::int64_t>(0, 9)(rng))});
        break;
      }
    }
  }
  return out;
}

// 7. GMW backend against the ideal functionality.
Outcome backend_equivalence() {
  std::set<std::uint64_t> dealers;
  auto w4 = width4_cases();
  for (std::size_t i = 0; i < w4.size(); ++i) {
    std::uint64_t dealer = 1 + i % 5;
    dealers.insert(dealer);
    if (auto err = compare_backends(w4[i], 4, dealer); !err.empty()) return fail(err);
  }
  auto w32 = width32_cases(100);
  for (std::size_t i = 0; i < w32.size(); ++i) {
    std::uint64_t dealer = 1000 + i % 7;
    dealers.insert(dealer);
    if (auto err = compare_backends(w32[i], 32, dealer); !err.empty()) return fail(err);
  }
  return pass(std::to_string(w4.size()) + " exhaustive cases at w=4, " + std::to_string(w32.size()) +
              " random cases at w=32, " + std::to_string(dealers.size()) + " dealer seeds");
}

// 8. Comparison circuits and the AND-triple protocol.
Outcome circuit_oracle() {
  const PrinSet ab{"a", "b"};
  auto env_of = [](std::int64_t x, std::int64_t y) {
    return Env{}.bind("x", Value::sealed({"a"}, Value::integer(x))).bind("y", Value::sealed({"b"}, Value::integer(y)));
  };
  std::size_t checked = 0;
  for (const char* op : {"gt", "eq"}) {
    Circuit c = compile_sec_thunk(env_of(0, 0), parse_program(std::string("(ffi ") + op + " (reveal x) (reveal y))"), ab, 2);
    for (std::int64_t x = -2; x <= 1; ++x) {
      for (std::int64_t y = -2; y <= 1; ++y) {
        bool want = std::string(op) == "gt" ? x > y : x == y;
        std::map<Principal, std::vector<bool>> in;
        for (const auto& p : ab) in[p] = bind_inputs(c, p, slice_env(p, env_of(x, y)), nullptr);
        auto clear = eval_circuit(c, in);
        GmwResult g = gmw_eval(c, in, static_cast<std::uint64_t>(checked + 1));
        for (const auto& p : ab) {
          if (!(clear.at(p) == Value::boolean(want)) || !(decode_output(c, p, g.outputs.at(p)) == Value::boolean(want))) {
            return fail(std::string(op) + " " + std::to_string(x) + " " + std::to_string(y));
          }
        }
        ++checked;
      }
    }
  }
  Circuit land;
  land.width = 1;
  land.parties = ab;
  land.num_wires = 3;
  land.inputs.push_back(InputGroup{Principal("a"), InputGroup::Kind::Bool, "x", {}, std::nullopt, {0}});
  land.inputs.push_back(InputGroup{Principal("b"), InputGroup::Kind::Bool, "y", {}, std::nullopt, {1}});
  land.gates.push_back(Gate{Gate::Op::And, 2, 0, 1, false});
  OutShape bit;
  bit.kind = OutShape::Kind::Bool;
  bit.wires = {2};
  land.outputs = {{Principal("a"), bit}, {Principal("b"), bit}};
  std::size_t triples = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (bool x : {false, true}) {
      for (bool y : {false, true}) {
        GmwResult g = gmw_eval(land, {{Principal("a"), {x}}, {Principal("b"), {y}}}, seed, seed + 100);
        for (const auto& p : ab) {
          if (g.outputs.at(p) != std::vector<bool>{x && y}) return fail("AND triple, seed " + std::to_string(seed));
        }
        ++triples;
      }
    }
  }
  return pass(std::to_string(checked) + " comparison pairs, " + std::to_string(triples) + " AND runs");
}

// 9. Shares, freshness and full deals.
Outcome cards() {
  Verdict v = apps::check_cards(4, 7, 5);
  if (!v.pass()) return fail(v.detail);
  return pass(v.detail);
}

// 10. Slice/combine algebra on generated values.
Outcome slice_algebra() {
  testing::Rng rng(99);
  const PrinSet u{"a", "b", "c"};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Value v = testing::random_value(rng, 3, u);
    Value joint = Value::opaque();
    for (const auto& p : u) {
      Value s = slice_v(p, v);
      if (!(slice_v(p, s) == s)) return fail("slice not idempotent for " + p.name + " on " + show(v));
      joint = combine_v(joint, s);
    }
    if (!(joint == v)) return fail("combine of slices differs from " + show(v));
  }
  return pass(std::to_string(n) + " values");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "simulation on corpus and generated programs", 60, simulation},
      {2, "confluence over 100 seeded schedules", 120, confluence},
      {3, "median values and traces", 30, median_correctness},
      {4, "median delimited release with negative control", 60, delimited_release},
      {5, "psi permutation and optimized-trace reconstruction", 120, psi_security},
      {6, "psi comparison counts", 10, psi_counts},
      {7, "gmw backend equals ideal functionality", 120, backend_equivalence},
      {8, "comparison circuits and AND triples", 5, circuit_oracle},
      {9, "card dealing", 60, cards},
      {10, "slice/combine algebra", 10, slice_algebra},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs > c.budget_s) {
      out.ok = false;
      out.detail += " (over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget)";
    }
    if (!out.ok) ++failures;
    std::printf("%s criterion %d: %s [%.2f s / %.0f s] %s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
