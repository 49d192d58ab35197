#include "wysx/expr.hpp"

#include <algorithm>
#include <set>

namespace wysx {

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

bool same_all(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_expr(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Expr::AsPar> || std::is_same_v<T, Expr::AsSec>) {
          return same_expr(x.ps, y.ps) && same_expr(x.thunk, y.thunk);
        } else if constexpr (std::is_same_v<T, Expr::Seal> || std::is_same_v<T, Expr::MkMap>) {
          return same_expr(x.ps, y.ps) && same_expr(x.value, y.value);
        } else if constexpr (std::is_same_v<T, Expr::Reveal>) {
          return same_expr(x.value, y.value);
        } else if constexpr (std::is_same_v<T, Expr::Ffi>) {
          return x.name == y.name && same_all(x.args, y.args);
        } else if constexpr (std::is_same_v<T, Expr::Project>) {
          return same_expr(x.prin, y.prin) && same_expr(x.map, y.map);
        } else if constexpr (std::is_same_v<T, Expr::Concat>) {
          return same_expr(x.lhs, y.lhs) && same_expr(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, Expr::Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          return x.name == y.name && same_expr(x.bound, y.bound) && same_expr(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          return x.param == y.param && same_expr(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          return same_expr(x.fn, y.fn) && same_expr(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Expr::Fix>) {
          return x.self == y.self && x.param == y.param && same_expr(x.body, y.body);
        } else {
          static_assert(std::is_same_v<T, Expr::If>);
          return same_expr(x.cond, y.cond) && same_expr(x.then_branch, y.then_branch) &&
                 same_expr(x.else_branch, y.else_branch);
        }
      },
      a.node);
}

namespace {

void collect(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out);

void collect_scoped(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out,
                    std::initializer_list<std::string> names) {
  std::vector<std::string> added;
  for (const auto& n : names) {
    if (bound.insert(n).second) added.push_back(n);
  }
  collect(e, bound, out);
  for (const auto& n : added) bound.erase(n);
}

void collect(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::AsPar> || std::is_same_v<T, Expr::AsSec>) {
          collect(*x.ps, bound, out);
          collect(*x.thunk, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Seal> || std::is_same_v<T, Expr::MkMap>) {
          collect(*x.ps, bound, out);
          collect(*x.value, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Reveal>) {
          collect(*x.value, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Ffi>) {
          for (const auto& a : x.args) collect(*a, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Project>) {
          collect(*x.prin, bound, out);
          collect(*x.map, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Concat>) {
          collect(*x.lhs, bound, out);
          collect(*x.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Const>) {
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          if (!bound.contains(x.name)) out.insert(x.name);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          collect(*x.bound, bound, out);
          collect_scoped(*x.body, bound, out, {x.name});
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          collect_scoped(*x.body, bound, out, {x.param});
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          collect(*x.fn, bound, out);
          collect(*x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Fix>) {
          collect_scoped(*x.body, bound, out, {x.self, x.param});
        } else {
          collect(*x.cond, bound, out);
          collect(*x.then_branch, bound, out);
          collect(*x.else_branch, bound, out);
        }
      },
      e.node);
}

ExprPtr mk(Expr::Node n) { return std::make_shared<const Expr>(Expr{std::move(n)}); }

}  // namespace

std::vector<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  collect(e, bound, out);
  return {out.begin(), out.end()};
}

namespace ast {

ExprPtr as_par(ExprPtr ps, ExprPtr thunk) { return mk(Expr::AsPar{std::move(ps), std::move(thunk)}); }
ExprPtr as_sec(ExprPtr ps, ExprPtr thunk) { return mk(Expr::AsSec{std::move(ps), std::move(thunk)}); }
ExprPtr seal(ExprPtr ps, ExprPtr value) { return mk(Expr::Seal{std::move(ps), std::move(value)}); }
ExprPtr reveal(ExprPtr value) { return mk(Expr::Reveal{std::move(value)}); }
ExprPtr ffi(std::string name, std::vector<ExprPtr> args) {
  return mk(Expr::Ffi{std::move(name), std::move(args)});
}
ExprPtr mkmap(ExprPtr ps, ExprPtr value) { return mk(Expr::MkMap{std::move(ps), std::move(value)}); }
ExprPtr project(ExprPtr prin, ExprPtr map) { return mk(Expr::Project{std::move(prin), std::move(map)}); }
ExprPtr concat(ExprPtr lhs, ExprPtr rhs) { return mk(Expr::Concat{std::move(lhs), std::move(rhs)}); }
ExprPtr constant(Value v) { return mk(Expr::Const{std::move(v)}); }
ExprPtr var(std::string name) { return mk(Expr::Var{std::move(name)}); }
ExprPtr let(std::string name, ExprPtr bound, ExprPtr body) {
  return mk(Expr::Let{std::move(name), std::move(bound), std::move(body)});
}
ExprPtr lam(std::string param, ExprPtr body) { return mk(Expr::Lam{std::move(param), std::move(body)}); }
ExprPtr app(ExprPtr fn, ExprPtr arg) { return mk(Expr::App{std::move(fn), std::move(arg)}); }
ExprPtr fix(std::string self, std::string param, ExprPtr body) {
  return mk(Expr::Fix{std::move(self), std::move(param), std::move(body)});
}
ExprPtr if_(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch) {
  return mk(Expr::If{std::move(cond), std::move(then_branch), std::move(else_branch)});
}

ExprPtr integer(std::int64_t n) { return constant(Value::integer(n)); }
ExprPtr boolean(bool b) { return constant(Value::boolean(b)); }
ExprPtr prins(PrinSet s) { return constant(Value::prins(std::move(s))); }
ExprPtr prin(std::string name) { return constant(Value::prin(std::move(name))); }

}  // namespace ast

}  // namespace wysx
