#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "wysx/config.hpp"
#include "wysx/error.hpp"
#include "wysx/slice.hpp"

namespace wysx {
namespace {

Value I(std::int64_t n) { return Value::integer(n); }
Value sealed(PrinSet s, Value v) { return Value::sealed(std::move(s), std::move(v)); }
const Principal a("a"), b("b"), c("c");

bool has_tscope(const Trace& t) {
  for (const auto& e : t) {
    if (std::holds_alternative<TScope>(e.node)) return true;
  }
  return false;
}

Value combine_all(const PrinSet& ps, const Value& v) {
  Value acc = Value::opaque();
  for (const auto& p : ps) acc = combine_v(acc, slice_v(p, v));
  return acc;
}

TEST(SliceV, Examples) {
  EXPECT_EQ(slice_v(a, sealed({"b"}, I(7))), sealed({"b"}, Value::opaque()));
  EXPECT_EQ(slice_v(a, sealed({"a", "b"}, I(7))), sealed({"a", "b"}, I(7)));
  EXPECT_EQ(slice_v(a, I(42)), I(42));
}

TEST(SliceV, MapKeepsOwnEntry) {
  Value m = Value::map({{a, I(1)}, {b, I(2)}});
  EXPECT_EQ(slice_v(a, m), Value::map({{a, I(1)}}));
  EXPECT_EQ(slice_v(c, m), Value::map({}));
}

TEST(SliceV, ShareKeepsOwnWord) {
  ShareHandle h{PrinSet{"a", "b"}, {{a, 3}, {b, 5}}};
  EXPECT_EQ(slice_v(b, Value::share(h)), Value::share(ShareHandle{PrinSet{"a", "b"}, {{b, 5}}}));
  EXPECT_EQ(combine_v(slice_v(a, Value::share(h)), slice_v(b, Value::share(h))), Value::share(h));
}

TEST(SliceV, ClosureSlicesItsEnvironment) {
  Closure f;
  f.param = "x";
  f.body = ast::var("x");
  f.env = Env{}.bind("s", sealed({"b"}, I(9)));
  Closure g = f;
  g.env = Env{}.bind("s", sealed({"b"}, Value::opaque()));
  EXPECT_EQ(slice_v(a, Value(f)), Value(g));
  EXPECT_EQ(slice_v(b, Value(f)), Value(f));
}

TEST(SliceTr, Examples) {
  EXPECT_EQ(slice_tr(a, {tscope({"b"}, {tmsg(I(1))})}), Trace{});
  EXPECT_EQ(slice_tr(a, {tmsg(sealed({"b"}, I(1)))}), Trace{tmsg(sealed({"b"}, Value::opaque()))});
  EXPECT_EQ(slice_tr(a, {tscope({"a"}, {tmsg(I(2))})}), Trace{tmsg(I(2))});
}

TEST(SliceTr, NestedScopesFlatten) {
  Trace t{tmsg(I(1)), tscope({"a", "b"}, {tmsg(I(2)), tscope({"b"}, {tmsg(I(3))}), tmsg(I(4))})};
  EXPECT_EQ(slice_tr(a, t), (Trace{tmsg(I(1)), tmsg(I(2)), tmsg(I(4))}));
  EXPECT_EQ(slice_tr(b, t), (Trace{tmsg(I(1)), tmsg(I(2)), tmsg(I(3)), tmsg(I(4))}));
  EXPECT_EQ(slice_tr(c, t), (Trace{tmsg(I(1))}));
}

TEST(SliceCfg, SlicesEnvironmentPerParty) {
  Config cfg = Config::initial(Mode::par({"a", "b"}), Env{}.bind("x", sealed({"a"}, I(1))), ast::var("x"));
  Protocol pi = slice_cfg({"a", "b"}, cfg);
  ASSERT_EQ(pi.par.size(), 2u);
  EXPECT_TRUE(pi.sec.empty());
  EXPECT_EQ(pi.par.at(a).env, Env{}.bind("x", sealed({"a"}, I(1))));
  EXPECT_EQ(pi.par.at(b).env, Env{}.bind("x", sealed({"a"}, Value::opaque())));
  EXPECT_EQ(pi.par.at(a).mode, Mode::par({"a"}));
}

TEST(SliceCfg, TerminalPublicValue) {
  Config cfg = Config::initial(Mode::par({"a"}), Env{}, ast::integer(5));
  cfg.term = I(5);
  Protocol pi = slice_cfg({"a"}, cfg);
  EXPECT_TRUE(pi.par.at(a).terminal());
  EXPECT_EQ(pi.par.at(a).value(), I(5));
}

TEST(SliceCfg, TracesSlicedPerParty) {
  Config cfg = Config::initial(Mode::par({"a", "b"}), Env{}, ast::integer(0));
  cfg.trace = {tscope({"a"}, {tmsg(I(1))})};
  Protocol pi = slice_cfg({"a", "b"}, cfg);
  EXPECT_EQ(pi.par.at(a).trace, Trace{tmsg(I(1))});
  EXPECT_EQ(pi.par.at(b).trace, Trace{});
}

TEST(SliceCfg, RequiresMatchingParMode) {
  Config cfg = Config::initial(Mode::sec({"a", "b"}), Env{}, ast::integer(0));
  try {
    slice_cfg({"a", "b"}, cfg);
    FAIL() << "expected ModeError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ModeError);
  }
}

TEST(SliceProperties, IdempotenceOnGeneratedValues) {
  testing::Rng rng(7);
  PrinSet u{"a", "b", "c"};
  for (int i = 0; i < 2000; ++i) {
    Value v = testing::random_value(rng, 3, u);
    for (const auto& p : u) {
      Value once = slice_v(p, v);
      ASSERT_EQ(slice_v(p, once), once) << show(v);
    }
  }
}

TEST(SliceProperties, RoundTripOnGeneratedValues) {
  testing::Rng rng(11);
  PrinSet u{"a", "b", "c"};
  for (int i = 0; i < 2000; ++i) {
    Value v = testing::random_value(rng, 3, u);
    ASSERT_EQ(combine_all(u, v), v) << show(v);
  }
}

TEST(SliceProperties, CombineCommutesAndAssociatesOnSlices) {
  testing::Rng rng(13);
  PrinSet u{"a", "b", "c"};
  for (int i = 0; i < 1000; ++i) {
    Value v = testing::random_value(rng, 3, u);
    Value sa = slice_v(a, v), sb = slice_v(b, v), sc = slice_v(c, v);
    ASSERT_EQ(combine_v(sa, sb), combine_v(sb, sa)) << show(v);
    ASSERT_EQ(combine_v(combine_v(sa, sb), sc), combine_v(sa, combine_v(sb, sc))) << show(v);
  }
}

TEST(SliceProperties, SlicedTracesAreFlat) {
  testing::Rng rng(17);
  PrinSet u{"a", "b", "c"};
  for (int i = 0; i < 300; ++i) {
    Trace t;
    for (int k = 0; k < 4; ++k) {
      Value v = testing::random_value(rng, 2, u);
      if (rng() % 2 == 0) {
        t.push_back(tmsg(v));
      } else {
        t.push_back(tscope(testing::random_subset(rng, u), {tmsg(v), tscope(testing::random_subset(rng, u), {tmsg(v)})}));
      }
    }
    for (const auto& p : u) ASSERT_FALSE(has_tscope(slice_tr(p, t)));
  }
}

TEST(RestrictV, JointViewOfASubset) {
  Value v = Value::tuple({sealed({"a"}, I(1)), sealed({"b"}, I(2)), sealed({"c"}, I(3))});
  EXPECT_EQ(restrict_v({"a", "b"}, v),
            Value::tuple({sealed({"a"}, I(1)), sealed({"b"}, I(2)), sealed({"c"}, Value::opaque())}));
}

}  // namespace
}  // namespace wysx
