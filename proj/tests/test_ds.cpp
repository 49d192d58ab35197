#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "wysx/apps.hpp"
#include "wysx/ds.hpp"
#include "wysx/sexpr.hpp"
#include "wysx/slice.hpp"

namespace wysx {
namespace {

Value I(std::int64_t n) { return Value::integer(n); }
const PrinSet ab{"a", "b"};
const Principal a("a"), b("b");

Env median_env() { return apps::median_inputs({1, 3}, {2, 4}); }

Config local_config(const Principal& p, std::string_view src, Env env = Env{}) {
  return Config::initial(Mode::par(PrinSet::singleton(p)), std::move(env), parse_program(src));
}

LocalOutcome local_until_done(const Principal& p, Config c) {
  for (int i = 0; i < 10000; ++i) {
    LocalOutcome out = local_step(p, c);
    auto* n = std::get_if<Next>(&out);
    if (n == nullptr) return out;
    c = std::move(n->config);
  }
  return Stuck{"test", "too many steps"};
}

bool flat(const Trace& t) {
  for (const auto& e : t) {
    if (std::holds_alternative<TScope>(e.node)) return false;
  }
  return true;
}

TEST(LocalStep, AsParForOthersIsSkipped) {
  LocalOutcome out = local_until_done(b, local_config(b, "(as_par (prins a) (lam u 5))"));
  ASSERT_TRUE(std::holds_alternative<Done>(out));
  EXPECT_EQ(std::get<Done>(out).value, Value::sealed({"a"}, Value::opaque()));
}

TEST(LocalStep, AsParReturnDoesNotScopeTrace) {
  Env env = Env{}.bind("x", I(1));
  Config c = local_config(a, "(as_par (prins a b) (lam u x))", env);
  c.trace = {tmsg(I(9))};
  LocalOutcome out = local_until_done(a, c);
  ASSERT_TRUE(std::holds_alternative<Done>(out));
  EXPECT_EQ(std::get<Done>(out).value, Value::sealed(ab, I(1)));
  EXPECT_EQ(std::get<Done>(out).trace, Trace{tmsg(I(9))});
}

TEST(LocalStep, AsSecWaits) {
  LocalOutcome out = local_until_done(a, local_config(a, "(as_sec (prins a b) (lam u 1))"));
  ASSERT_TRUE(std::holds_alternative<NeedsSec>(out));
  EXPECT_EQ(std::get<NeedsSec>(out).ps, ab);
  EXPECT_EQ(std::get<NeedsSec>(out).thunk.param, "u");
}

TEST(LocalStep, SealHidesFromOthers) {
  LocalOutcome out = local_until_done(b, local_config(b, "(seal (prins a) 5)"));
  ASSERT_TRUE(std::holds_alternative<Done>(out));
  EXPECT_EQ(std::get<Done>(out).value, Value::sealed({"a"}, Value::opaque()));
}

TEST(Protocol, EnterCombinesEnvironments) {
  Protocol pi = initial_protocol(apps::program("median"), slice_inputs(ab, median_env()));
  ProtocolStepper stepper(Scheduler::round_robin(), SecBackend::ideal());
  for (int i = 0; i < 1000 && pi.sec.empty(); ++i) {
    ASSERT_EQ(stepper.step(pi).kind, ProtocolStepper::Result::Kind::Stepped);
  }
  ASSERT_EQ(pi.sec.size(), 1u);
  const Config& sec = pi.sec.begin()->second.config;
  EXPECT_EQ(sec.mode, Mode::sec(ab));
  EXPECT_TRUE(sec.stack.empty());
  EXPECT_TRUE(sec.trace.empty());
  ASSERT_NE(sec.env.lookup("in_a"), nullptr);
  EXPECT_EQ(*sec.env.lookup("in_a"), Value::sealed({"a"}, Value::tuple({I(1), I(3)})));
  EXPECT_EQ(*sec.env.lookup("in_b"), Value::sealed({"b"}, Value::tuple({I(2), I(4)})));
}

TEST(Protocol, ExitDeliversSlicedResults) {
  DsRun r = ds_run(parse_program("(as_sec (prins a b) (lam u (concat (mkmap (prins a) 1) (mkmap (prins b) 2))))"),
                   slice_inputs(ab, Env{}));
  ASSERT_TRUE(r.done()) << r.stuck.reason;
  EXPECT_EQ(r.values().at(a), Value::map({{a, I(1)}}));
  EXPECT_EQ(r.values().at(b), Value::map({{b, I(2)}}));
  EXPECT_EQ(r.traces().at(a), Trace{tmsg(Value::map({{a, I(1)}}))});
}

TEST(Protocol, BodyMismatchIsReported) {
  Protocol pi;
  pi.par.emplace(a, local_config(a, "(as_sec (prins a b) (lam u 1))"));
  pi.par.emplace(b, local_config(b, "(as_sec (prins a b) (lam u 2))"));
  DsRun r = ds_run_protocol(pi);
  ASSERT_EQ(r.status, DsRun::Status::Stuck);
  EXPECT_EQ(r.stuck.code, Errc::BodyMismatch);
}

TEST(DsRun, Median) {
  DsRun r = ds_run(apps::program("median"), slice_inputs(ab, median_env()));
  ASSERT_TRUE(r.done()) << r.stuck.reason;
  EXPECT_EQ(r.values().at(a), I(2));
  EXPECT_EQ(r.values().at(b), I(2));
  EXPECT_EQ(r.traces().at(a), Trace{tmsg(I(2))});
  EXPECT_EQ(r.traces().at(b), Trace{tmsg(I(2))});
}

TEST(DsRun, SealedResult) {
  DsRun r = ds_run(parse_program("(seal (prins a) 5)"), slice_inputs(ab, Env{}));
  ASSERT_TRUE(r.done());
  EXPECT_EQ(r.values().at(a), Value::sealed({"a"}, I(5)));
  EXPECT_EQ(r.values().at(b), Value::sealed({"a"}, Value::opaque()));
}

TEST(DsRun, ConstantTakesOneLocalStepEach) {
  DsRun r = ds_run(parse_program("5"), slice_inputs(ab, Env{}));
  ASSERT_TRUE(r.done());
  EXPECT_EQ(r.values().at(a), I(5));
  EXPECT_EQ(r.stats.par_steps, 2u);
  EXPECT_EQ(r.stats.enters, 0u);
}

TEST(DsRun, TracesAreFlat) {
  DsRun r = ds_run(apps::program("median_opt"), slice_inputs(ab, median_env()));
  ASSERT_TRUE(r.done()) << r.stuck.reason;
  for (const auto& [p, t] : r.traces()) EXPECT_TRUE(flat(t));
  EXPECT_EQ(r.traces().at(a), (Trace{tmsg(Value::boolean(false)), tmsg(I(2))}));
}

TEST(DsRun, EnterOnlyWhenAllPartiesArrive) {
  DsRun r = ds_run(apps::program("median_opt"), slice_inputs(ab, median_env()), Scheduler::seeded(3));
  ASSERT_TRUE(r.done());
  EXPECT_EQ(r.stats.enters, 2u);
  EXPECT_EQ(r.stats.exits, 2u);
}

TEST(DsRun, SchedulesAreReproducible) {
  auto inputs = slice_inputs(ab, median_env());
  DsRun r1 = ds_run(apps::program("median_opt"), inputs, Scheduler::seeded(99));
  DsRun r2 = ds_run(apps::program("median_opt"), inputs, Scheduler::seeded(99));
  EXPECT_EQ(r1.final, r2.final);
  EXPECT_EQ(r1.stats.total(), r2.stats.total());
}

TEST(Checks, SimulationExamples) {
  EXPECT_TRUE(check_simulation(apps::program("median"), median_env(), ab).pass());
  EXPECT_TRUE(check_simulation(parse_program("true"), Env{}, ab).pass());
  Verdict v = check_simulation(apps::program("psi_opt"), apps::psi_elem_inputs({1, 2}, {2, 3}), ab);
  EXPECT_TRUE(v.pass()) << v.detail;
}

TEST(Checks, SimulationInconclusiveOnDivergence) {
  Verdict v = check_simulation(parse_program("(app (fix f n (app f n)) 0)"), Env{}, ab, 1000);
  EXPECT_EQ(v.status, Verdict::Status::Inconclusive);
}

TEST(Checks, ConfluenceExamples) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 100; ++s) seeds.push_back(s);
  EXPECT_TRUE(check_confluence(apps::program("median"), median_env(), ab, seeds).pass());
  EXPECT_TRUE(check_confluence(parse_program("(ffi add 1 2)"), Env{}, PrinSet{"a"}, seeds).pass());
  std::vector<std::uint64_t> few(seeds.begin(), seeds.begin() + 25);
  Verdict v = check_confluence(apps::program("check_fresh"), apps::check_fresh_inputs({3, 7}, 5), apps::parties_abc(), few);
  EXPECT_TRUE(v.pass()) << v.detail;
}

TEST(Checks, SimulationOnRandomPrograms) {
  testing::Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    PrinSet u = i % 2 == 0 ? ab : PrinSet{"a", "b", "c"};
    ExprPtr e = testing::random_program(rng, 4, u);
    Env env = testing::random_inputs(rng, u);
    Verdict v = check_simulation(e, env, u);
    ASSERT_TRUE(v.pass()) << print_expr(e) << ": " << v.detail;
  }
}

}  // namespace
}  // namespace wysx
