#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wysx/expr.hpp"
#include "wysx/trace.hpp"
#include "wysx/value.hpp"

namespace wysx {

struct Mode {
  enum class Tag { Par, Sec };
  Tag tag = Tag::Par;
  PrinSet ps;

  static Mode par(PrinSet s) { return Mode{Tag::Par, std::move(s)}; }
  static Mode sec(PrinSet s) { return Mode{Tag::Sec, std::move(s)}; }

  bool is_par() const { return tag == Tag::Par; }
  bool is_sec() const { return tag == Tag::Sec; }

  bool operator==(const Mode&) const = default;
};

std::string to_string(const Mode& m);

/// Evaluation contexts, one per hole position. Binary forms share a
/// representation tagged with the operator.
namespace ctx {

enum class BinOp { AsPar, AsSec, Seal, MkMap, Project, Concat, App };

/// `op ⟨⟩ e`
struct Left {
  BinOp op;
  ExprPtr rhs;
  bool operator==(const Left& o) const;
};
/// `op v ⟨⟩`
struct Right {
  BinOp op;
  Value lhs;
  bool operator==(const Right&) const = default;
};
/// `reveal ⟨⟩`
struct Reveal {
  bool operator==(const Reveal&) const = default;
};
/// `ffi f v̄ ⟨⟩ ē`: `call` is the whole Ffi node, `done` the evaluated prefix.
struct Ffi {
  ExprPtr call;
  std::vector<Value> done;
  bool operator==(const Ffi& o) const;
};
/// `let x = ⟨⟩ in e`
struct Let {
  std::string name;
  ExprPtr body;
  bool operator==(const Let& o) const;
};
/// `if ⟨⟩ then e2 else e3`
struct If {
  ExprPtr then_branch, else_branch;
  bool operator==(const If& o) const;
};
/// Return point of an `as_par s` body: `seal s ⟨⟩`.
struct AsParRet {
  PrinSet ps;
  bool operator==(const AsParRet&) const = default;
};
/// Return point of an `as_sec` body.
struct AsSecRet {
  bool operator==(const AsSecRet&) const = default;
};
using Ctx = std::variant<Left, Right, Reveal, Ffi, Let, If, AsParRet, AsSecRet>;

}  // namespace ctx

struct Frame {
  Mode mode;
  Env env;
  ctx::Ctx ctx;
  Trace trace;
  bool operator==(const Frame&) const = default;
};

/// The fully evaluated redex `as_sec s (L, λx.e)`. ST reduces it with S-assec;
/// a DS party waits on it until P-exit.
struct PendingSec {
  PrinSet ps;
  Closure thunk;
  bool operator==(const PendingSec&) const = default;
};

using Term = std::variant<ExprPtr, Value, PendingSec>;

/// Per-block state for mk_sh inside a secure computation: the nonce of each
/// party (derived from its own view of the block inputs) and the number of
/// shares created so far.
struct ShareContext {
  std::map<Principal, std::uint64_t> nonces;
  std::uint64_t created = 0;
  bool operator==(const ShareContext&) const = default;
};

/// `M; X; L; T; e`
struct Config {
  Mode mode;
  std::vector<Frame> stack;  // top is back()
  Env env;
  Trace trace;
  Term term;
  std::optional<ShareContext> shares;

  bool is_value() const { return std::holds_alternative<Value>(term); }
  const Value& value() const { return std::get<Value>(term); }

  /// Par mode, empty stack, value.
  bool terminal() const { return mode.is_par() && stack.empty() && is_value(); }

  static Config initial(Mode mode, Env env, ExprPtr e);

  bool operator==(const Config& o) const;
};

/// `P; S`. Secure entries remember the per-party results when the block was
/// evaluated by a cryptographic backend instead of the ST stepper.
struct SecEntry {
  Config config;
  std::optional<std::map<Principal, Value>> results;
  bool operator==(const SecEntry&) const = default;
};

struct Protocol {
  std::map<Principal, Config> par;
  std::map<PrinSet, SecEntry> sec;

  bool terminal() const;
  bool operator==(const Protocol&) const = default;
};

}  // namespace wysx
