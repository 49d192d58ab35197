#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "wysx/value.hpp"

namespace wysx {

/// The DSL abstract syntax. Constants carry literal values only.
struct Expr {
  struct AsPar {
    ExprPtr ps, thunk;
  };
  struct AsSec {
    ExprPtr ps, thunk;
  };
  struct Seal {
    ExprPtr ps, value;
  };
  struct Reveal {
    ExprPtr value;
  };
  struct Ffi {
    std::string name;
    std::vector<ExprPtr> args;
  };
  struct MkMap {
    ExprPtr ps, value;
  };
  /// `project p m`: the entry of principal `p` in map `m`.
  struct Project {
    ExprPtr prin, map;
  };
  struct Concat {
    ExprPtr lhs, rhs;
  };
  struct Const {
    Value value;
  };
  struct Var {
    std::string name;
  };
  struct Let {
    std::string name;
    ExprPtr bound, body;
  };
  struct Lam {
    std::string param;
    ExprPtr body;
  };
  struct App {
    ExprPtr fn, arg;
  };
  struct Fix {
    std::string self, param;
    ExprPtr body;
  };
  struct If {
    ExprPtr cond, then_branch, else_branch;
  };

  using Node = std::variant<AsPar, AsSec, Seal, Reveal, Ffi, MkMap, Project, Concat, Const,
                            Var, Let, Lam, App, Fix, If>;
  Node node;
};

bool operator==(const Expr& a, const Expr& b);
/// Deep structural equality, pointer-equal shortcut.
bool same_expr(const ExprPtr& a, const ExprPtr& b);

/// Free variables of `e`, sorted.
std::vector<std::string> free_vars(const Expr& e);

namespace ast {

ExprPtr as_par(ExprPtr ps, ExprPtr thunk);
ExprPtr as_sec(ExprPtr ps, ExprPtr thunk);
ExprPtr seal(ExprPtr ps, ExprPtr value);
ExprPtr reveal(ExprPtr value);
ExprPtr ffi(std::string name, std::vector<ExprPtr> args);
ExprPtr mkmap(ExprPtr ps, ExprPtr value);
ExprPtr project(ExprPtr prin, ExprPtr map);
ExprPtr concat(ExprPtr lhs, ExprPtr rhs);
ExprPtr constant(Value v);
ExprPtr var(std::string name);
ExprPtr let(std::string name, ExprPtr bound, ExprPtr body);
ExprPtr lam(std::string param, ExprPtr body);
ExprPtr app(ExprPtr fn, ExprPtr arg);
ExprPtr fix(std::string self, std::string param, ExprPtr body);
ExprPtr if_(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch);

ExprPtr integer(std::int64_t n);
ExprPtr boolean(bool b);
ExprPtr prins(PrinSet s);
ExprPtr prin(std::string name);

}  // namespace ast

}  // namespace wysx
