#pragma once

#include <string>

#include "json.hpp"
#include "wysx/trace.hpp"
#include "wysx/value.hpp"

namespace wysx {

using Json = nlohmann::json;

/// Value encoding:
///   int -> number, bool -> true/false, unit -> null, list -> array,
///   "opaque" -> ●, {"str": s}, {"prin": "a"}, {"prins": [...]},
///   {"tuple": [...]}, {"sealed": {"ps": [...], "v": ...}} ("v" may be
///   omitted for ●), {"map": {"a": ...}}, {"share": {"ps": [...],
///   "words": {"a": "0x..."}}}, {"closure": {"param", "self", "body", "env"}}.
Json value_to_json(const Value& v);
/// Throws InputError on malformed input.
Value value_from_json(const Json& j);

/// Array of {"TMsg": v} and {"TScope": {"ps": [...], "t": [...]}}.
Json trace_to_json(const Trace& t);
Trace trace_from_json(const Json& j);

/// Variable bindings as a JSON object.
Json env_to_json(const Env& env);
Env env_from_json(const Json& j);

/// Compact canonical text: equal values serialize byte-identically.
std::string canonical(const Json& j);

}  // namespace wysx
