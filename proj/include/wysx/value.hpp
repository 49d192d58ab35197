#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wysx/principal.hpp"

namespace wysx {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Value;

/// Lexically extended variable environment `L[x -> v]`. Immutable; extension
/// shares the tail. Equality compares effective bindings (shadowed entries
/// are invisible).
class Env {
public:
  Env() = default;

  Env bind(std::string name, Value value) const;
  const Value* lookup(std::string_view name) const;

  /// Effective bindings, last binding wins.
  std::map<std::string, Value> bindings() const;
  static Env from(const std::map<std::string, Value>& bindings);

  bool empty() const noexcept { return head_ == nullptr; }

  bool operator==(const Env& other) const;

private:
  struct Node;
  std::shared_ptr<const Node> head_;
};

struct Unit {
  bool operator==(const Unit&) const = default;
};
struct Opaque {
  bool operator==(const Opaque&) const = default;
};
struct Bool {
  bool b;
  bool operator==(const Bool&) const = default;
};
struct Int {
  std::int64_t n;
  bool operator==(const Int&) const = default;
};
struct Str {
  std::string s;
  bool operator==(const Str&) const = default;
};
struct Tuple {
  std::vector<Value> items;
  bool operator==(const Tuple&) const;
};
struct List {
  std::vector<Value> items;
  bool operator==(const List&) const;
};
struct Sealed;
struct VMap {
  std::map<Principal, Value> entries;
  bool operator==(const VMap&) const;
};

/// `(L, λx.e)` or, when `self` is set, `(L, fix f.λx.e)`.
struct Closure {
  Env env;
  std::string param;
  ExprPtr body;
  std::optional<std::string> self;
  bool operator==(const Closure&) const;
};

/// XOR secret shares of a 64-bit word. Each party holds only its own word;
/// a missing entry means the word is not visible in this view.
struct ShareHandle {
  PrinSet parties;
  std::map<Principal, std::uint64_t> words;
  bool operator==(const ShareHandle&) const = default;
};

class Value {
public:
  using Node = std::variant<Principal, PrinSet, Unit, Bool, Int, Str, Tuple, List,
                            Sealed, VMap, Closure, Opaque, ShareHandle>;

  Value();  // unit
  Value(Node node);

  static Value prin(std::string name);
  static Value prins(PrinSet s);
  static Value unit();
  static Value boolean(bool b);
  static Value integer(std::int64_t n);
  static Value str(std::string s);
  static Value tuple(std::vector<Value> items);
  static Value list(std::vector<Value> items);
  static Value sealed(PrinSet s, Value v);
  static Value map(std::map<Principal, Value> entries);
  static Value opaque();
  static Value share(ShareHandle h);

  const Node& node() const;

  template <class T>
  const T* get_if() const;
  template <class T>
  bool is() const;

  bool is_opaque() const;

  bool operator==(const Value& other) const;

private:
  std::shared_ptr<const Node> node_;
};

struct Sealed {
  PrinSet ps;
  Value v;
  bool operator==(const Sealed&) const = default;
};

// Member definitions that need the complete variant.
inline const Value::Node& Value::node() const { return *node_; }

template <class T>
const T* Value::get_if() const {
  return std::get_if<T>(node_.get());
}
template <class T>
bool Value::is() const {
  return std::holds_alternative<T>(*node_);
}
inline bool Value::is_opaque() const { return is<Opaque>(); }

inline Value Value::prin(std::string name) { return Value(Principal(std::move(name))); }
inline Value Value::prins(PrinSet s) { return Value(std::move(s)); }
inline Value Value::unit() { return Value(Unit{}); }
inline Value Value::boolean(bool b) { return Value(Bool{b}); }
inline Value Value::integer(std::int64_t n) { return Value(Int{n}); }
inline Value Value::str(std::string s) { return Value(Str{std::move(s)}); }
inline Value Value::tuple(std::vector<Value> items) { return Value(Tuple{std::move(items)}); }
inline Value Value::list(std::vector<Value> items) { return Value(List{std::move(items)}); }
inline Value Value::map(std::map<Principal, Value> entries) { return Value(VMap{std::move(entries)}); }
inline Value Value::opaque() { return Value(Opaque{}); }
inline Value Value::share(ShareHandle h) { return Value(std::move(h)); }

/// Short human-readable rendering, used in diagnostics and circuit dumps.
std::string show(const Value& v);

}  // namespace wysx
