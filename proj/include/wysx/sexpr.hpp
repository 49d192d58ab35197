#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "wysx/error.hpp"
#include "wysx/expr.hpp"

namespace wysx {

/// Syntax error with the 1-based position of the offending token.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t col, const std::string& expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t line_, col_;
  std::string expected_;
};

/// Parse exactly one expression. Grammar (`;` starts a comment):
///
///   e ::= INT | true | false | "str" | () | NAME
///       | (as_par e e) | (as_sec e e) | (seal e e) | (reveal e)
///       | (ffi NAME e*) | (mkmap e e) | (project e e) | (concat e e)
///       | (let NAME e e) | (lam NAME e) | (fix NAME NAME e) | (if e e e)
///       | (app e e e*) | literal
///   literal ::= (prin NAME) | (prins NAME*) | (list lit*) | (tuple lit*)
///       | (sealed (NAME*) lit) | (map (NAME lit)*) | (opaque)
///
/// `(app f a b)` is `((f a) b)`.
ExprPtr parse_program(std::string_view text);

/// Parse a literal value (the `lit` production plus atoms).
Value parse_literal(std::string_view text);

/// Canonical single-line rendering; parse_program(print_expr(e)) equals e.
/// Throws InputError for constants with no literal syntax (closures, shares).
std::string print_expr(const ExprPtr& e);
std::string print_literal(const Value& v);

}  // namespace wysx
