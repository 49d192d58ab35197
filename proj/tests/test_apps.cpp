#include <gtest/gtest.h>

#include <set>

#include "wysx/apps.hpp"
#include "wysx/error.hpp"
#include "wysx/ffi.hpp"
#include "wysx/oracles.hpp"
#include "wysx/suites.hpp"

namespace wysx {
namespace {

Value I(std::int64_t n) { return Value::integer(n); }
using apps::IntList;

TEST(Oracle, MedianOf) {
  EXPECT_EQ(oracle::median_of({1, 3}, {2, 4}), 2);
  EXPECT_EQ(oracle::median_of({1, 2}, {3, 4}), 2);
  EXPECT_EQ(oracle::median_of({1, 4}, {2, 3}), 2);
  EXPECT_EQ(oracle::median_of({5, 8}, {1, 6}), 5);
}

TEST(Oracle, MedianPrecondition) {
  EXPECT_TRUE(oracle::median_pre({1, 3}, {2, 4}));
  EXPECT_FALSE(oracle::median_pre({3, 1}, {2, 4}));
  EXPECT_FALSE(oracle::median_pre({1, 3}, {3, 4}));
  try {
    oracle::median_of({1, 3}, {1, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PreViolation);
  }
}

TEST(Oracle, OptTrace) {
  Trace want{tmsg(Value::boolean(false)), tscope({"a"}, {}), tscope({"b"}, {}), tmsg(I(2))};
  EXPECT_EQ(oracle::opt_trace({1, 3}, {2, 4}, 2), want);
  EXPECT_EQ(oracle::median_trace(2), Trace{tmsg(I(2))});
}

TEST(Oracle, PsiTraces) {
  EXPECT_EQ(oracle::trace_psi({1, 2}, {2, 3}), (std::vector<bool>{false, false, true, false}));
  EXPECT_EQ(oracle::trace_psi_opt({1, 2}, {1, 2}), (std::vector<bool>{true, true}));
  EXPECT_EQ(oracle::trace_psi_opt({1, 2}, {3, 4}), (std::vector<bool>{false, false, false, false}));
  EXPECT_EQ(oracle::intersection({5, 1, 3}, {3, 5, 7}), (IntList{5, 3}));
  EXPECT_TRUE(oracle::is_permutation({true, false, false}, {false, false, true}));
  EXPECT_FALSE(oracle::is_permutation({true, false}, {true, true}));
}

TEST(Oracle, Cards) {
  EXPECT_FALSE(oracle::is_fresh({3, 7}, 7));
  EXPECT_TRUE(oracle::is_fresh({3, 7}, 5));
  EXPECT_TRUE(oracle::is_fresh({}, 0));
  EXPECT_EQ(oracle::card_of(20, 20, 11), 51);
  EXPECT_EQ(oracle::card_of(51, 51, 51), 49);
}

TEST(Median, BothProgramsAgreeWithOracle) {
  for (auto [a, b] : std::vector<std::pair<apps::Pair, apps::Pair>>{{{1, 3}, {2, 4}}, {{1, 2}, {3, 4}}, {{1, 4}, {2, 3}}}) {
    std::int64_t m = oracle::median_of(a, b);
    EXPECT_EQ(apps::run_st("median", apps::median_inputs(a, b), apps::parties_ab()).value(), I(m));
    EXPECT_EQ(apps::run_st("median_opt", apps::median_inputs(a, b), apps::parties_ab()).value(), I(m));
    EXPECT_EQ(apps::median_opt_st_trace(a, b), oracle::opt_trace(a, b, m));
  }
}

TEST(Median, ReleaseChecks) {
  EXPECT_TRUE(apps::check_median_security(1, 6).pass());
  apps::MedianTraceFn leaky = [](apps::Pair a, apps::Pair b) {
    return oracle::opt_trace_leaky(a, b, oracle::median_of(a, b));
  };
  Verdict v = apps::check_median_release(1, 6, apps::Side::Alice, leaky);
  EXPECT_EQ(v.status, Verdict::Status::Fail);
  EXPECT_NE(v.detail.find("in_a1="), std::string::npos);
}

TEST(Psi, ProgramsComputeTheIntersection) {
  IntList la{1, 2, 5}, lb{2, 3, 5};
  auto want_a = oracle::intersection(la, lb), want_b = oracle::intersection(lb, la);
  StRun single = apps::run_st("psi", apps::psi_inputs(la, lb), apps::parties_ab());
  EXPECT_EQ(apps::int_list(single.value()), want_a);
  for (const char* name : {"psi_interim", "psi_opt"}) {
    StRun r = apps::run_st(name, apps::psi_elem_inputs(la, lb), apps::parties_ab());
    auto [ia, ib] = apps::psi_outputs(r.value());
    EXPECT_EQ(ia, want_a) << name;
    EXPECT_EQ(ib, want_b) << name;
  }
}

TEST(Psi, ComparisonCounts) {
  auto same = apps::psi_comparison_count({1, 2}, {1, 2});
  EXPECT_EQ(same.naive, 4u);
  EXPECT_EQ(same.optimized, 2u);
  auto disjoint = apps::psi_comparison_count({1, 2}, {3, 4});
  EXPECT_EQ(disjoint.naive, 4u);
  EXPECT_EQ(disjoint.optimized, 4u);
  auto empty = apps::psi_comparison_count({}, {});
  EXPECT_EQ(empty.naive, 0u);
  EXPECT_EQ(empty.optimized, 0u);
}

TEST(Psi, SecuritySuiteSmall) {
  Verdict v = apps::check_psi_security(2, 1, 4);
  EXPECT_TRUE(v.pass()) << v.detail;
}

TEST(Cards, CheckFresh) {
  auto run = [](const IntList& h, std::int64_t c) {
    return apps::run_st("check_fresh", apps::check_fresh_inputs(h, c), apps::parties_abc()).value();
  };
  EXPECT_EQ(run({3, 7}, 7), Value::boolean(false));
  EXPECT_EQ(run({}, 7), Value::boolean(true));
  EXPECT_EQ(run({3, 7}, 5), Value::boolean(true));
}

TEST(Cards, CheckFreshOneComparisonPerElement) {
  StRun r = apps::run_st("check_fresh", apps::check_fresh_inputs({1, 2, 3}, 9), apps::parties_abc());
  EXPECT_EQ(r.stats.count("S-assec"), 3u);
}

TEST(Cards, DealUsesSumModulo52) {
  // Find seeds whose attempt-0 contributions sum to 51.
  bool found = false;
  for (std::int64_t s = 1; s < 2000 && !found; ++s) {
    std::array<std::int64_t, 3> seeds{s, s + 1, s + 2};
    std::int64_t r1 = seeded_rand(seeds[0], 0, 52), r2 = seeded_rand(seeds[1], 0, 52), r3 = seeded_rand(seeds[2], 0, 52);
    if (r1 + r2 + r3 != 51) continue;
    found = true;
    apps::DealStep d = apps::deal_card(Value::list({}), seeds, 0);
    EXPECT_EQ(d.card, oracle::card_of(r1, r2, r3));
    EXPECT_EQ(d.card, 51);
    EXPECT_TRUE(d.fresh());
    ASSERT_EQ(d.shares.get_if<List>()->items.size(), 1u);
  }
  EXPECT_TRUE(found);
}

TEST(Cards, CollisionAsksForRetry) {
  std::array<std::int64_t, 3> seeds{11, 22, 33};
  std::int64_t card = oracle::card_of(seeded_rand(11, 0, 52), seeded_rand(22, 0, 52), seeded_rand(33, 0, 52));
  Value history = Value::list({apps::share_of(card, apps::parties_abc(), 5)});
  apps::DealStep d = apps::deal_card(history, seeds, 0);
  EXPECT_FALSE(d.fresh());
  EXPECT_EQ(d.shares, history);
}

TEST(Cards, DeckExhausted) {
  std::vector<Value> full;
  for (int i = 0; i < 52; ++i) full.push_back(apps::share_of(i, apps::parties_abc(), i));
  try {
    apps::deal_card(Value::list(full), {1, 2, 3}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DeckExhausted);
  }
}

TEST(Cards, FullDealIsDistinct) {
  auto cards = apps::deal_all({7, 8, 9});
  std::set<std::int64_t> distinct(cards.begin(), cards.end());
  EXPECT_EQ(cards.size(), 52u);
  EXPECT_EQ(distinct.size(), 52u);
}

TEST(Corpus, EveryProgramCovered) {
  std::set<std::string> seen;
  for (const auto& c : apps::corpus_cases()) {
    seen.insert(c.program);
    StRun r = st_run(apps::program(c.program), c.logical, c.parties);
    EXPECT_TRUE(r.done()) << c.program << " " << c.label << ": " << r.stuck.reason;
  }
  for (const auto& name : apps::program_names()) EXPECT_TRUE(seen.contains(name)) << name;
}

}  // namespace
}  // namespace wysx
