#include "wysx/config.hpp"

namespace wysx {

std::string to_string(const Mode& m) {
  return std::string(m.is_par() ? "Par " : "Sec ") + m.ps.to_string();
}

namespace ctx {

bool Left::operator==(const Left& o) const { return op == o.op && same_expr(rhs, o.rhs); }
bool Ffi::operator==(const Ffi& o) const { return same_expr(call, o.call) && done == o.done; }
bool Let::operator==(const Let& o) const { return name == o.name && same_expr(body, o.body); }
bool If::operator==(const If& o) const {
  return same_expr(then_branch, o.then_branch) && same_expr(else_branch, o.else_branch);
}

}  // namespace ctx

Config Config::initial(Mode mode, Env env, ExprPtr e) {
  Config c;
  c.mode = std::move(mode);
  c.env = std::move(env);
  c.term = std::move(e);
  return c;
}

namespace {

bool same_term(const Term& a, const Term& b) {
  if (a.index() != b.index()) return false;
  if (const auto* e = std::get_if<ExprPtr>(&a)) return same_expr(*e, std::get<ExprPtr>(b));
  return a == b;
}

}  // namespace

bool Config::operator==(const Config& o) const {
  return mode == o.mode && stack == o.stack && env == o.env && trace == o.trace &&
         same_term(term, o.term) && shares == o.shares;
}

bool Protocol::terminal() const {
  if (!sec.empty()) return false;
  for (const auto& [p, c] : par) {
    if (!c.terminal()) return false;
  }
  return true;
}

}  // namespace wysx
