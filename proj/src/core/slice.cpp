#include "wysx/slice.hpp"

#include "wysx/error.hpp"
#include "wysx/expr.hpp"

namespace wysx {

namespace {

[[noreturn]] void conflict(const Value& a, const Value& b) {
  throw Error(Errc::CombineConflict, show(a) + " vs " + show(b));
}

Env combine_two(const Env& a, const Env& b) {
  auto ma = a.bindings();
  auto mb = b.bindings();
  if (ma.size() != mb.size()) throw Error(Errc::DomainMismatch, "environments bind different variables");
  std::map<std::string, Value> out;
  auto ib = mb.begin();
  for (const auto& [name, v] : ma) {
    if (ib->first != name) throw Error(Errc::DomainMismatch, "variable " + name + " missing in one view");
    out.emplace(name, combine_v(v, ib->second));
    ++ib;
  }
  return Env::from(out);
}

std::vector<Value> combine_items(const std::vector<Value>& a, const std::vector<Value>& b,
                                 const Value& va, const Value& vb) {
  if (a.size() != b.size()) conflict(va, vb);
  std::vector<Value> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(combine_v(a[i], b[i]));
  return out;
}

}  // namespace

Value combine_v(const Value& lhs, const Value& rhs) {
  if (lhs.is_opaque()) return rhs;
  if (rhs.is_opaque()) return lhs;
  if (lhs.node().index() != rhs.node().index()) conflict(lhs, rhs);

  if (const auto* s1 = lhs.get_if<Sealed>()) {
    const auto& s2 = *rhs.get_if<Sealed>();
    if (s1->ps != s2.ps) conflict(lhs, rhs);
    return Value::sealed(s1->ps, combine_v(s1->v, s2.v));
  }
  if (const auto* m1 = lhs.get_if<VMap>()) {
    std::map<Principal, Value> out = m1->entries;
    for (const auto& [p, v] : rhs.get_if<VMap>()->entries) {
      auto [it, fresh] = out.emplace(p, v);
      if (!fresh) it->second = combine_v(it->second, v);
    }
    return Value::map(std::move(out));
  }
  if (const auto* t1 = lhs.get_if<Tuple>()) {
    return Value::tuple(combine_items(t1->items, rhs.get_if<Tuple>()->items, lhs, rhs));
  }
  if (const auto* l1 = lhs.get_if<List>()) {
    return Value::list(combine_items(l1->items, rhs.get_if<List>()->items, lhs, rhs));
  }
  if (const auto* h1 = lhs.get_if<ShareHandle>()) {
    const auto& h2 = *rhs.get_if<ShareHandle>();
    if (h1->parties != h2.parties) conflict(lhs, rhs);
    ShareHandle out = *h1;
    for (const auto& [p, w] : h2.words) {
      auto [it, fresh] = out.words.emplace(p, w);
      if (!fresh && it->second != w) conflict(lhs, rhs);
    }
    return Value::share(std::move(out));
  }
  if (const auto* c1 = lhs.get_if<Closure>()) {
    const auto& c2 = *rhs.get_if<Closure>();
    if (c1->param != c2.param || c1->self != c2.self || !same_expr(c1->body, c2.body)) {
      conflict(lhs, rhs);
    }
    if (c1->env == c2.env) return lhs;
    return Value(Closure{combine_two(c1->env, c2.env), c1->param, c1->body, c1->self});
  }
  if (!(lhs == rhs)) conflict(lhs, rhs);
  return lhs;
}

Env combine_env(const std::vector<Env>& envs) {
  if (envs.empty()) throw Error(Errc::DomainMismatch, "combine of no environments");
  Env out = envs.front();
  for (std::size_t i = 1; i < envs.size(); ++i) out = combine_two(out, envs[i]);
  return out;
}

Value slice_v(const Principal& p, const Value& v) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Sealed>) {
          if (!x.ps.contains(p)) return Value::sealed(x.ps, Value::opaque());
          return Value::sealed(x.ps, slice_v(p, x.v));
        } else if constexpr (std::is_same_v<T, VMap>) {
          std::map<Principal, Value> out;
          if (auto it = x.entries.find(p); it != x.entries.end()) out.emplace(p, slice_v(p, it->second));
          return Value::map(std::move(out));
        } else if constexpr (std::is_same_v<T, Tuple> || std::is_same_v<T, List>) {
          std::vector<Value> items;
          items.reserve(x.items.size());
          for (const auto& i : x.items) items.push_back(slice_v(p, i));
          return Value(T{std::move(items)});
        } else if constexpr (std::is_same_v<T, Closure>) {
          return Value(Closure{slice_env(p, x.env), x.param, x.body, x.self});
        } else if constexpr (std::is_same_v<T, ShareHandle>) {
          ShareHandle out{x.parties, {}};
          if (auto it = x.words.find(p); it != x.words.end()) out.words.emplace(p, it->second);
          return Value::share(std::move(out));
        } else {
          return v;
        }
      },
      v.node());
}

Env slice_env(const Principal& p, const Env& env) {
  auto b = env.bindings();
  for (auto& [name, v] : b) v = slice_v(p, v);
  return Env::from(b);
}

namespace {

void slice_tr_into(const Principal& p, const Trace& t, Trace& out) {
  for (const auto& e : t) {
    if (const auto* m = std::get_if<TMsg>(&e.node)) {
      out.push_back(tmsg(slice_v(p, m->v)));
    } else {
      const auto& s = std::get<TScope>(e.node);
      if (s.ps.contains(p)) slice_tr_into(p, s.t, out);
    }
  }
}

ctx::Ctx slice_ctx(const Principal& p, const ctx::Ctx& c) {
  return std::visit(
      [&](const auto& x) -> ctx::Ctx {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ctx::Right>) {
          return ctx::Right{x.op, slice_v(p, x.lhs)};
        } else if constexpr (std::is_same_v<T, ctx::Ffi>) {
          ctx::Ffi out{x.call, {}};
          for (const auto& v : x.done) out.done.push_back(slice_v(p, v));
          return out;
        } else {
          return x;
        }
      },
      c);
}

}  // namespace

Trace slice_tr(const Principal& p, const Trace& t) {
  Trace out;
  slice_tr_into(p, t, out);
  return out;
}

Protocol slice_cfg(const PrinSet& s, const Config& c) {
  if (!c.mode.is_par() || c.mode.ps != s) {
    throw Error(Errc::ModeError, "slice " + s.to_string() + " of a " + to_string(c.mode) + " configuration");
  }
  Protocol out;
  for (const auto& p : s) {
    Config pc;
    pc.mode = Mode::par(PrinSet::singleton(p));
    for (const auto& f : c.stack) {
      pc.stack.push_back(Frame{Mode::par(PrinSet::singleton(p)), slice_env(p, f.env), slice_ctx(p, f.ctx),
                               slice_tr(p, f.trace)});
    }
    pc.env = slice_env(p, c.env);
    pc.trace = slice_tr(p, c.trace);
    if (const auto* v = std::get_if<Value>(&c.term)) {
      pc.term = slice_v(p, *v);
    } else if (const auto* ps = std::get_if<PendingSec>(&c.term)) {
      pc.term = PendingSec{ps->ps, std::get<Closure>(slice_v(p, Value(ps->thunk)).node())};
    } else {
      pc.term = c.term;
    }
    out.par.emplace(p, std::move(pc));
  }
  return out;
}

Value restrict_v(const PrinSet& s, const Value& v) {
  Value out = Value::opaque();
  for (const auto& p : s) out = combine_v(out, slice_v(p, v));
  return out;
}

}  // namespace wysx
