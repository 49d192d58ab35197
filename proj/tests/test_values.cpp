#include <gtest/gtest.h>

#include "wysx/error.hpp"
#include "wysx/ffi.hpp"
#include "wysx/slice.hpp"
#include "wysx/value.hpp"

namespace wysx {
namespace {

Value I(std::int64_t n) { return Value::integer(n); }
Value L(std::vector<Value> xs) { return Value::list(std::move(xs)); }
Value sealed(PrinSet s, Value v) { return Value::sealed(std::move(s), std::move(v)); }
Value opq() { return Value::opaque(); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::Stuck;
}

TEST(PrinSet, CanonicalOrderAndNoDuplicates) {
  PrinSet s{"c", "a", "b", "a"};
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.members()[0].name, "a");
  EXPECT_EQ(s.members()[2].name, "c");
  EXPECT_EQ(s, (PrinSet{"b", "c", "a"}));
  EXPECT_EQ(s.to_string(), "{a,b,c}");
}

TEST(PrinSet, NamesAreCaseSensitive) {
  PrinSet s{"A", "a"};
  EXPECT_EQ(s.size(), 2u);
  EXPECT_LT(Principal("A"), Principal("a"));
}

TEST(PrinSet, SetAlgebra) {
  PrinSet ab{"a", "b"}, bc{"b", "c"};
  EXPECT_TRUE((PrinSet{"a"}).subset_of(ab));
  EXPECT_FALSE(ab.subset_of(bc));
  EXPECT_TRUE(ab.intersects(bc));
  EXPECT_FALSE((PrinSet{"a"}).intersects(PrinSet{"c"}));
  EXPECT_EQ(ab.intersect(bc), PrinSet{"b"});
  EXPECT_EQ(ab.unite(bc), (PrinSet{"a", "b", "c"}));
}

TEST(Value, StructuralEquality) {
  EXPECT_EQ(Value::tuple({I(1), L({I(2)})}), Value::tuple({I(1), L({I(2)})}));
  EXPECT_NE(Value::tuple({I(1), I(2)}), L({I(1), I(2)}));
  EXPECT_NE(sealed({"a"}, I(1)), sealed({"b"}, I(1)));
  EXPECT_EQ(Value::unit(), Value());
  EXPECT_NE(Value::boolean(false), I(0));
}

TEST(Env, LaterBindingShadows) {
  Env e = Env{}.bind("x", I(1)).bind("y", I(2)).bind("x", I(3));
  ASSERT_NE(e.lookup("x"), nullptr);
  EXPECT_EQ(*e.lookup("x"), I(3));
  EXPECT_EQ(e.lookup("z"), nullptr);
  EXPECT_EQ(e.bindings().size(), 2u);
  EXPECT_EQ(e, Env{}.bind("y", I(2)).bind("x", I(3)));
}

TEST(Combine, OpaqueAbsorbs) {
  EXPECT_EQ(combine_v(opq(), sealed({"a"}, I(5))), sealed({"a"}, I(5)));
  EXPECT_EQ(combine_v(opq(), opq()), opq());
  EXPECT_EQ(combine_v(sealed({"a"}, I(5)), opq()), sealed({"a"}, I(5)));
}

TEST(Combine, SealedRecursesOnContents) {
  EXPECT_EQ(combine_v(sealed({"a"}, I(5)), sealed({"a"}, opq())), sealed({"a"}, I(5)));
  EXPECT_EQ(combine_v(sealed({"a", "b"}, Value::tuple({I(1), opq()})), sealed({"a", "b"}, Value::tuple({opq(), I(2)}))),
            sealed({"a", "b"}, Value::tuple({I(1), I(2)})));
}

TEST(Combine, ConflictsAreErrors) {
  EXPECT_EQ(code_of([] { combine_v(I(1), I(2)); }), Errc::CombineConflict);
  EXPECT_EQ(code_of([] { combine_v(sealed({"a"}, I(1)), sealed({"b"}, I(1))); }), Errc::CombineConflict);
  EXPECT_EQ(code_of([] { combine_v(L({I(1)}), L({I(1), I(2)})); }), Errc::CombineConflict);
  EXPECT_EQ(combine_v(I(4), I(4)), I(4));
}

TEST(Combine, MapsMergeOnUnionOfKeys) {
  Value ma = Value::map({{Principal("a"), I(1)}});
  Value mb = Value::map({{Principal("b"), I(2)}});
  EXPECT_EQ(combine_v(ma, mb), Value::map({{Principal("a"), I(1)}, {Principal("b"), I(2)}}));
}

TEST(Combine, SharesMergeWords) {
  ShareHandle a{PrinSet{"a", "b"}, {{Principal("a"), 7}}};
  ShareHandle b{PrinSet{"a", "b"}, {{Principal("b"), 9}}};
  ShareHandle ab{PrinSet{"a", "b"}, {{Principal("a"), 7}, {Principal("b"), 9}}};
  EXPECT_EQ(combine_v(Value::share(a), Value::share(b)), Value::share(ab));
}

TEST(CombineEnv, Pointwise) {
  EXPECT_EQ(combine_env({Env{}.bind("x", opq()), Env{}.bind("x", I(3))}), Env{}.bind("x", I(3)));
  Env l1 = Env{}.bind("x", sealed({"a"}, I(1))).bind("y", opq());
  Env l2 = Env{}.bind("x", sealed({"a"}, opq())).bind("y", I(2));
  EXPECT_EQ(combine_env({l1, l2}), Env{}.bind("x", sealed({"a"}, I(1))).bind("y", I(2)));
}

TEST(CombineEnv, Errors) {
  EXPECT_EQ(code_of([] { combine_env({Env{}.bind("x", I(1)), Env{}.bind("x", I(2))}); }), Errc::CombineConflict);
  EXPECT_EQ(code_of([] { combine_env({Env{}.bind("x", I(1)), Env{}.bind("y", I(1))}); }), Errc::DomainMismatch);
  EXPECT_EQ(code_of([] { combine_env({Env{}.bind("x", I(1)), Env{}}); }), Errc::DomainMismatch);
}

TEST(Ffi, Examples) {
  std::vector<Value> gt{I(3), I(2)};
  EXPECT_EQ(exec_ffi("gt", gt), Value::boolean(true));
  std::vector<Value> fst{Value::tuple({I(1), I(2)})};
  EXPECT_EQ(exec_ffi("fst", fst), I(1));
  std::vector<Value> inter{L({I(1), I(2), I(3)}), L({I(2), I(3), I(4)})};
  EXPECT_EQ(exec_ffi("list_intersect", inter), L({I(2), I(3)}));
}

TEST(Ffi, IntersectKeepsFirstArgumentOrder) {
  std::vector<Value> args{L({I(5), I(1), I(3)}), L({I(3), I(5)})};
  EXPECT_EQ(exec_ffi("list_intersect", args), L({I(5), I(3)}));
}

TEST(Ffi, ArithmeticWraps) {
  std::vector<Value> args{I(INT64_MAX), I(1)};
  EXPECT_EQ(exec_ffi("add", args), I(INT64_MIN));
}

TEST(Ffi, ListFunctions) {
  std::vector<Value> cons{I(1), L({I(2)})};
  EXPECT_EQ(exec_ffi("cons", cons), L({I(1), I(2)}));
  std::vector<Value> en{L({I(7), I(9)})};
  EXPECT_EQ(exec_ffi("enumerate", en), L({Value::tuple({I(0), I(7)}), Value::tuple({I(1), I(9)})}));
  std::vector<Value> mem{I(2), L({I(1), I(2)})};
  EXPECT_EQ(exec_ffi("list_mem", mem), Value::boolean(true));
  std::vector<Value> nth{L({I(4), I(5)}), I(1)};
  EXPECT_EQ(exec_ffi("list_nth", nth), I(5));
}

TEST(Ffi, Errors) {
  std::vector<Value> one{I(1)};
  EXPECT_EQ(code_of([&] { exec_ffi("no_such_fn", one); }), Errc::UnknownFfi);
  EXPECT_EQ(code_of([&] { exec_ffi("add", one); }), Errc::ArityError);
  std::vector<Value> bad{I(1), Value::boolean(true)};
  EXPECT_EQ(code_of([&] { exec_ffi("add", bad); }), Errc::FfiTypeError);
  std::vector<Value> opaque{I(1), opq()};
  EXPECT_EQ(code_of([&] { exec_ffi("add", opaque); }), Errc::OpaqueArg);
}

TEST(Ffi, Deterministic) {
  std::vector<Value> args{L({I(3), I(1), I(2)}), L({I(2), I(3)})};
  EXPECT_EQ(exec_ffi("list_intersect", args), exec_ffi("list_intersect", args));
  std::vector<Value> r{I(7), I(3), I(52)};
  EXPECT_EQ(exec_ffi("rand_mod", r), exec_ffi("rand_mod", r));
}

TEST(Ffi, SeededRandInRange) {
  for (std::int64_t c = 0; c < 200; ++c) {
    auto r = seeded_rand(42, c, 52);
    EXPECT_GE(r, 0);
    EXPECT_LT(r, 52);
  }
  EXPECT_EQ(seeded_rand(1, 2, 52), seeded_rand(1, 2, 52));
}

}  // namespace
}  // namespace wysx
