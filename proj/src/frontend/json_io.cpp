#include <cstdio>

#include "wysx/error.hpp"
#include "wysx/json_io.hpp"
#include "wysx/sexpr.hpp"

namespace wysx {

namespace {

[[noreturn]] void bad(const std::string& what, const Json& j) {
  throw Error(Errc::InputError, what + ": " + j.dump());
}

Json prins_json(const PrinSet& s) {
  Json out = Json::array();
  for (const auto& p : s) out.push_back(p.name);
  return out;
}

PrinSet prins_from(const Json& j) {
  if (!j.is_array()) bad("expected a principal list", j);
  std::vector<Principal> ps;
  for (const auto& x : j) {
    if (!x.is_string()) bad("expected a principal name", x);
    ps.emplace_back(x.get<std::string>());
  }
  return PrinSet(std::move(ps));
}

std::string hex(std::uint64_t w) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(w));
  return buf;
}

std::uint64_t from_hex(const Json& j) {
  if (!j.is_string()) bad("expected a hex word", j);
  const auto s = j.get<std::string>();
  try {
    std::size_t used = 0;
    auto w = std::stoull(s, &used, 16);
    if (used != s.size()) bad("expected a hex word", j);
    return w;
  } catch (const std::logic_error&) {
    bad("expected a hex word", j);
  }
}

const Json& single_key(const Json& j, std::string& key) {
  if (!j.is_object() || j.size() != 1) bad("expected a single-key object", j);
  key = j.begin().key();
  return j.begin().value();
}

}  // namespace

Json value_to_json(const Value& v) {
  return std::visit(
      [&](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, Bool>) {
          return x.b;
        } else if constexpr (std::is_same_v<T, Int>) {
          return x.n;
        } else if constexpr (std::is_same_v<T, Str>) {
          return Json{{"str", x.s}};
        } else if constexpr (std::is_same_v<T, Opaque>) {
          return "opaque";
        } else if constexpr (std::is_same_v<T, Principal>) {
          return Json{{"prin", x.name}};
        } else if constexpr (std::is_same_v<T, PrinSet>) {
          return Json{{"prins", prins_json(x)}};
        } else if constexpr (std::is_same_v<T, List>) {
          Json a = Json::array();
          for (const auto& i : x.items) a.push_back(value_to_json(i));
          return a;
        } else if constexpr (std::is_same_v<T, Tuple>) {
          Json a = Json::array();
          for (const auto& i : x.items) a.push_back(value_to_json(i));
          return Json{{"tuple", a}};
        } else if constexpr (std::is_same_v<T, Sealed>) {
          return Json{{"sealed", {{"ps", prins_json(x.ps)}, {"v", value_to_json(x.v)}}}};
        } else if constexpr (std::is_same_v<T, VMap>) {
          Json m = Json::object();
          for (const auto& [p, e] : x.entries) m[p.name] = value_to_json(e);
          return Json{{"map", m}};
        } else if constexpr (std::is_same_v<T, ShareHandle>) {
          Json words = Json::object();
          for (const auto& [p, w] : x.words) words[p.name] = hex(w);
          return Json{{"share", {{"ps", prins_json(x.parties)}, {"words", words}}}};
        } else {
          static_assert(std::is_same_v<T, Closure>);
          Json c{{"param", x.param}, {"body", print_expr(x.body)}, {"env", env_to_json(x.env)}};
          if (x.self) c["self"] = *x.self;
          return Json{{"closure", c}};
        }
      },
      v.node());
}

Value value_from_json(const Json& j) {
  if (j.is_null()) return Value::unit();
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_string()) {
    if (j.get<std::string>() == "opaque") return Value::opaque();
    bad("bare strings other than \"opaque\" are not values (use {\"str\": ...})", j);
  }
  if (j.is_array()) {
    std::vector<Value> items;
    for (const auto& x : j) items.push_back(value_from_json(x));
    return Value::list(std::move(items));
  }
  if (!j.is_object()) bad("unsupported JSON value", j);
  std::string key;
  const Json& body = single_key(j, key);
  if (key == "str") {
    if (!body.is_string()) bad("expected a string", body);
    return Value::str(body.get<std::string>());
  }
  if (key == "prin") {
    if (!body.is_string()) bad("expected a principal name", body);
    return Value::prin(body.get<std::string>());
  }
  if (key == "prins") return Value::prins(prins_from(body));
  if (key == "tuple") {
    if (!body.is_array()) bad("expected an array", body);
    std::vector<Value> items;
    for (const auto& x : body) items.push_back(value_from_json(x));
    return Value::tuple(std::move(items));
  }
  if (key == "sealed") {
    if (!body.is_object() || !body.contains("ps")) bad("expected {\"ps\": [...], \"v\": ...}", body);
    Value inner = body.contains("v") ? value_from_json(body.at("v")) : Value::opaque();
    return Value::sealed(prins_from(body.at("ps")), std::move(inner));
  }
  if (key == "map") {
    if (!body.is_object()) bad("expected an object", body);
    std::map<Principal, Value> m;
    for (auto it = body.begin(); it != body.end(); ++it) m.emplace(Principal(it.key()), value_from_json(it.value()));
    return Value::map(std::move(m));
  }
  if (key == "share") {
    if (!body.is_object() || !body.contains("ps")) bad("expected {\"ps\": [...], \"words\": {...}}", body);
    ShareHandle h{prins_from(body.at("ps")), {}};
    if (body.contains("words")) {
      const Json& words = body.at("words");
      if (!words.is_object()) bad("expected an object", words);
      for (auto it = words.begin(); it != words.end(); ++it) h.words.emplace(Principal(it.key()), from_hex(it.value()));
    }
    return Value::share(std::move(h));
  }
  if (key == "closure") {
    if (!body.is_object() || !body.contains("param") || !body.contains("body")) bad("malformed closure", body);
    Closure c;
    c.param = body.at("param").get<std::string>();
    c.body = parse_program(body.at("body").get<std::string>());
    if (body.contains("env")) c.env = env_from_json(body.at("env"));
    if (body.contains("self")) c.self = body.at("self").get<std::string>();
    return Value(std::move(c));
  }
  bad("unknown value tag \"" + key + "\"", j);
}

Json trace_to_json(const Trace& t) {
  Json out = Json::array();
  for (const auto& e : t) {
    if (const auto* m = std::get_if<TMsg>(&e.node)) {
      out.push_back(Json{{"TMsg", value_to_json(m->v)}});
    } else {
      const auto& s = std::get<TScope>(e.node);
      out.push_back(Json{{"TScope", {{"ps", prins_json(s.ps)}, {"t", trace_to_json(s.t)}}}});
    }
  }
  return out;
}

Trace trace_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a trace array", j);
  Trace out;
  for (const auto& e : j) {
    std::string key;
    const Json& body = single_key(e, key);
    if (key == "TMsg") {
      out.push_back(tmsg(value_from_json(body)));
    } else if (key == "TScope") {
      if (!body.is_object() || !body.contains("ps") || !body.contains("t")) bad("malformed TScope", body);
      out.push_back(tscope(prins_from(body.at("ps")), trace_from_json(body.at("t"))));
    } else {
      bad("unknown trace element", e);
    }
  }
  return out;
}

Json env_to_json(const Env& env) {
  Json out = Json::object();
  for (const auto& [name, v] : env.bindings()) out[name] = value_to_json(v);
  return out;
}

Env env_from_json(const Json& j) {
  if (!j.is_object()) bad("expected an object of variable bindings", j);
  std::map<std::string, Value> b;
  for (auto it = j.begin(); it != j.end(); ++it) b.emplace(it.key(), value_from_json(it.value()));
  return Env::from(b);
}

std::string canonical(const Json& j) { return j.dump(); }

}  // namespace wysx
