#include <cctype>
#include <charconv>
#include <span>
#include <sstream>

#include "wysx/sexpr.hpp"

namespace wysx {

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& expected)
    : Error(Errc::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected),
      line_(line),
      col_(col),
      expected_(expected) {}

namespace {

struct Sexp {
  enum class Kind { Atom, Str, List };
  Kind kind = Kind::Atom;
  std::string text;
  std::vector<Sexp> items;
  std::size_t line = 1, col = 1;
};

class Reader {
public:
  explicit Reader(std::string_view src) : src_(src) {}

  Sexp read_one() {
    skip();
    if (eof()) fail("an expression");
    Sexp s = read();
    skip();
    if (!eof()) fail("end of input");
    return s;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(line_, col_, expected); }

  void skip() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        get();
      } else if (peek() == ';') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  Sexp read() {
    Sexp s;
    s.line = line_;
    s.col = col_;
    char c = peek();
    if (c == '(') {
      get();
      s.kind = Sexp::Kind::List;
      for (;;) {
        skip();
        if (eof()) fail("')'");
        if (peek() == ')') {
          get();
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (c == ')') fail("an expression");
    if (c == '"') {
      get();
      s.kind = Sexp::Kind::Str;
      for (;;) {
        if (eof()) fail("closing '\"'");
        char d = get();
        if (d == '"') return s;
        if (d == '\\') {
          if (eof()) fail("escape character");
          char e = get();
          switch (e) {
            case 'n': s.text += '\n'; break;
            case 't': s.text += '\t'; break;
            case '"': s.text += '"'; break;
            case '\\': s.text += '\\'; break;
            default: fail("one of \\n \\t \\\" \\\\");
          }
        } else {
          s.text += d;
        }
      }
    }
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' && peek() != ')' &&
           peek() != ';' && peek() != '"') {
      s.text += get();
    }
    return s;
  }
};

[[noreturn]] void fail_at(const Sexp& s, const std::string& expected) { throw ParseError(s.line, s.col, expected); }

bool is_int(const std::string& t) {
  std::size_t i = (t.size() > 1 && t[0] == '-') ? 1 : 0;
  if (i >= t.size()) return false;
  for (; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  }
  return true;
}

bool is_name(const std::string& t) {
  if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_')) return false;
  for (char c : t) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return true;
}

const std::vector<std::string_view> kReserved = {"as_par", "as_sec", "seal",  "reveal", "ffi",   "mkmap",
                                                 "project", "concat", "let",  "lam",    "fix",   "if",
                                                 "app",    "prin",   "prins", "list",   "tuple", "sealed",
                                                 "map",    "opaque", "true",  "false"};

bool reserved(std::string_view t) {
  for (auto r : kReserved) {
    if (r == t) return true;
  }
  return false;
}

std::string name_of(const Sexp& s, const char* what) {
  if (s.kind != Sexp::Kind::Atom || !is_name(s.text) || reserved(s.text)) fail_at(s, what);
  return s.text;
}

Value literal(const Sexp& s);

std::optional<Value> atom_literal(const Sexp& s) {
  if (s.kind == Sexp::Kind::Str) return Value::str(s.text);
  if (s.kind == Sexp::Kind::List) {
    if (s.items.empty()) return Value::unit();
    return std::nullopt;
  }
  if (s.text == "true") return Value::boolean(true);
  if (s.text == "false") return Value::boolean(false);
  if (is_int(s.text)) {
    std::int64_t n = 0;
    auto [p, ec] = std::from_chars(s.text.data(), s.text.data() + s.text.size(), n);
    if (ec != std::errc{} || p != s.text.data() + s.text.size()) fail_at(s, "a 64-bit integer");
    return Value::integer(n);
  }
  return std::nullopt;
}

/// Literal list forms; nullopt when the head is not a literal head.
std::optional<Value> compound_literal(const Sexp& s) {
  if (s.kind != Sexp::Kind::List || s.items.empty() || s.items[0].kind != Sexp::Kind::Atom) return std::nullopt;
  const std::string& head = s.items[0].text;
  auto args = std::span(s.items).subspan(1);
  auto arity = [&](std::size_t n) {
    if (args.size() != n) fail_at(s, "(" + head + ") with " + std::to_string(n) + " argument(s)");
  };
  if (head == "prin") {
    arity(1);
    return Value::prin(name_of(args[0], "a principal name"));
  }
  if (head == "prins") {
    std::vector<Principal> ps;
    for (const auto& a : args) ps.emplace_back(name_of(a, "a principal name"));
    return Value::prins(PrinSet(std::move(ps)));
  }
  if (head == "list" || head == "tuple") {
    std::vector<Value> items;
    for (const auto& a : args) items.push_back(literal(a));
    return head == "list" ? Value::list(std::move(items)) : Value::tuple(std::move(items));
  }
  if (head == "sealed") {
    arity(2);
    if (args[0].kind != Sexp::Kind::List) fail_at(args[0], "a parenthesized principal list");
    std::vector<Principal> ps;
    for (const auto& a : args[0].items) ps.emplace_back(name_of(a, "a principal name"));
    return Value::sealed(PrinSet(std::move(ps)), literal(args[1]));
  }
  if (head == "map") {
    std::map<Principal, Value> m;
    for (const auto& a : args) {
      if (a.kind != Sexp::Kind::List || a.items.size() != 2) fail_at(a, "a (principal literal) entry");
      m.emplace(Principal(name_of(a.items[0], "a principal name")), literal(a.items[1]));
    }
    return Value::map(std::move(m));
  }
  if (head == "opaque") {
    arity(0);
    return Value::opaque();
  }
  return std::nullopt;
}

Value literal(const Sexp& s) {
  if (auto v = atom_literal(s)) return *v;
  if (auto v = compound_literal(s)) return *v;
  fail_at(s, "a literal");
}

ExprPtr expr(const Sexp& s) {
  if (auto v = atom_literal(s)) return ast::constant(*v);
  if (s.kind == Sexp::Kind::Atom) {
    if (!is_name(s.text)) fail_at(s, "an expression");
    if (reserved(s.text)) fail_at(s, "an expression (\"" + s.text + "\" is reserved)");
    return ast::var(s.text);
  }
  if (auto v = compound_literal(s)) return ast::constant(*v);
  if (s.items[0].kind != Sexp::Kind::Atom) fail_at(s.items[0], "a form name");
  const std::string& head = s.items[0].text;
  auto args = std::span(s.items).subspan(1);
  auto arity = [&](std::size_t n) {
    if (args.size() != n) fail_at(s, "(" + head + ") with " + std::to_string(n) + " argument(s)");
  };
  if (head == "as_par" || head == "as_sec" || head == "seal" || head == "mkmap" || head == "project" ||
      head == "concat") {
    arity(2);
    auto a = expr(args[0]), b = expr(args[1]);
    if (head == "as_par") return ast::as_par(a, b);
    if (head == "as_sec") return ast::as_sec(a, b);
    if (head == "seal") return ast::seal(a, b);
    if (head == "mkmap") return ast::mkmap(a, b);
    if (head == "project") return ast::project(a, b);
    return ast::concat(a, b);
  }
  if (head == "reveal") {
    arity(1);
    return ast::reveal(expr(args[0]));
  }
  if (head == "ffi") {
    if (args.empty()) fail_at(s, "(ffi NAME args...)");
    std::vector<ExprPtr> xs;
    for (const auto& a : args.subspan(1)) xs.push_back(expr(a));
    return ast::ffi(name_of(args[0], "a host function name"), std::move(xs));
  }
  if (head == "let") {
    arity(3);
    return ast::let(name_of(args[0], "a variable name"), expr(args[1]), expr(args[2]));
  }
  if (head == "lam") {
    arity(2);
    return ast::lam(name_of(args[0], "a parameter name"), expr(args[1]));
  }
  if (head == "fix") {
    arity(3);
    return ast::fix(name_of(args[0], "a function name"), name_of(args[1], "a parameter name"), expr(args[2]));
  }
  if (head == "if") {
    arity(3);
    return ast::if_(expr(args[0]), expr(args[1]), expr(args[2]));
  }
  if (head == "app") {
    if (args.size() < 2) fail_at(s, "(app f arg...) with at least one argument");
    ExprPtr f = expr(args[0]);
    for (const auto& a : args.subspan(1)) f = ast::app(f, expr(a));
    return f;
  }
  fail_at(s.items[0], "a known form, not \"" + head + "\"");
}

void print_lit(std::ostream& os, const Value& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) {
          os << "()";
        } else if constexpr (std::is_same_v<T, Bool>) {
          os << (x.b ? "true" : "false");
        } else if constexpr (std::is_same_v<T, Int>) {
          os << x.n;
        } else if constexpr (std::is_same_v<T, Str>) {
          os << '"';
          for (char c : x.s) {
            switch (c) {
              case '\n': os << "\\n"; break;
              case '\t': os << "\\t"; break;
              case '"': os << "\\\""; break;
              case '\\': os << "\\\\"; break;
              default: os << c;
            }
          }
          os << '"';
        } else if constexpr (std::is_same_v<T, Principal>) {
          os << "(prin " << x.name << ')';
        } else if constexpr (std::is_same_v<T, PrinSet>) {
          os << "(prins";
          for (const auto& p : x) os << ' ' << p.name;
          os << ')';
        } else if constexpr (std::is_same_v<T, Tuple> || std::is_same_v<T, List>) {
          os << (std::is_same_v<T, Tuple> ? "(tuple" : "(list");
          for (const auto& i : x.items) {
            os << ' ';
            print_lit(os, i);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, Sealed>) {
          os << "(sealed (";
          bool first = true;
          for (const auto& p : x.ps) {
            os << (first ? "" : " ") << p.name;
            first = false;
          }
          os << ") ";
          print_lit(os, x.v);
          os << ')';
        } else if constexpr (std::is_same_v<T, VMap>) {
          os << "(map";
          for (const auto& [p, e] : x.entries) {
            os << " (" << p.name << ' ';
            print_lit(os, e);
            os << ')';
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, Opaque>) {
          os << "(opaque)";
        } else {
          throw Error(Errc::InputError, "value has no literal syntax: " + show(v));
        }
      },
      v.node());
}

void print(std::ostream& os, const ExprPtr& e) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        auto bin = [&](const char* head, const ExprPtr& a, const ExprPtr& b) {
          os << '(' << head << ' ';
          print(os, a);
          os << ' ';
          print(os, b);
          os << ')';
        };
        if constexpr (std::is_same_v<T, Expr::AsPar>) {
          bin("as_par", x.ps, x.thunk);
        } else if constexpr (std::is_same_v<T, Expr::AsSec>) {
          bin("as_sec", x.ps, x.thunk);
        } else if constexpr (std::is_same_v<T, Expr::Seal>) {
          bin("seal", x.ps, x.value);
        } else if constexpr (std::is_same_v<T, Expr::MkMap>) {
          bin("mkmap", x.ps, x.value);
        } else if constexpr (std::is_same_v<T, Expr::Project>) {
          bin("project", x.prin, x.map);
        } else if constexpr (std::is_same_v<T, Expr::Concat>) {
          bin("concat", x.lhs, x.rhs);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          bin("app", x.fn, x.arg);
        } else if constexpr (std::is_same_v<T, Expr::Reveal>) {
          os << "(reveal ";
          print(os, x.value);
          os << ')';
        } else if constexpr (std::is_same_v<T, Expr::Ffi>) {
          os << "(ffi " << x.name;
          for (const auto& a : x.args) {
            os << ' ';
            print(os, a);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, Expr::Const>) {
          print_lit(os, x.value);
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          os << x.name;
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          os << "(let " << x.name << ' ';
          print(os, x.bound);
          os << ' ';
          print(os, x.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          os << "(lam " << x.param << ' ';
          print(os, x.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, Expr::Fix>) {
          os << "(fix " << x.self << ' ' << x.param << ' ';
          print(os, x.body);
          os << ')';
        } else {
          static_assert(std::is_same_v<T, Expr::If>);
          os << "(if ";
          print(os, x.cond);
          os << ' ';
          print(os, x.then_branch);
          os << ' ';
          print(os, x.else_branch);
          os << ')';
        }
      },
      e->node);
}

}  // namespace

ExprPtr parse_program(std::string_view text) { return expr(Reader(text).read_one()); }

Value parse_literal(std::string_view text) { return literal(Reader(text).read_one()); }

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string print_literal(const Value& v) {
  std::ostringstream os;
  print_lit(os, v);
  return os.str();
}

}  // namespace wysx
