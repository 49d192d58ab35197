#pragma once

#include <variant>
#include <vector>

#include "wysx/value.hpp"

namespace wysx {

struct TraceElt;
using Trace = std::vector<TraceElt>;

struct TMsg {
  Value v;
  bool operator==(const TMsg&) const = default;
};

struct TScope {
  PrinSet ps;
  Trace t;
  bool operator==(const TScope&) const;
};

struct TraceElt {
  std::variant<TMsg, TScope> node;
  bool operator==(const TraceElt&) const = default;
};

inline TraceElt tmsg(Value v) { return TraceElt{TMsg{std::move(v)}}; }
inline TraceElt tscope(PrinSet ps, Trace t) { return TraceElt{TScope{std::move(ps), std::move(t)}}; }

inline bool TScope::operator==(const TScope& o) const { return ps == o.ps && t == o.t; }

/// Payloads of every TMsg, in order, ignoring scopes.
std::vector<Value> messages(const Trace& t);

bool has_scope(const Trace& t);

}  // namespace wysx
