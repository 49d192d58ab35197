#include "wysx/shares.hpp"

#include <set>

#include "wysx/error.hpp"
#include "wysx/expr.hpp"
#include "wysx/slice.hpp"

namespace wysx {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

struct Hasher {
  std::uint64_t h = kFnvOffset;

  void byte(std::uint8_t b) {
    h ^= b;
    h *= kFnvPrime;
  }
  void word(std::uint64_t w) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(w >> (8 * i)));
  }
  void text(const std::string& s) {
    word(s.size());
    for (char c : s) byte(static_cast<std::uint8_t>(c));
  }
  void env(const Env& e) {
    auto b = e.bindings();
    word(b.size());
    for (const auto& [name, v] : b) {
      text(name);
      value(v);
    }
  }
  void value(const Value& v) {
    byte(static_cast<std::uint8_t>(v.node().index()));
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Principal>) {
            text(x.name);
          } else if constexpr (std::is_same_v<T, PrinSet>) {
            word(x.size());
            for (const auto& p : x) text(p.name);
          } else if constexpr (std::is_same_v<T, Bool>) {
            byte(x.b ? 1 : 0);
          } else if constexpr (std::is_same_v<T, Int>) {
            word(static_cast<std::uint64_t>(x.n));
          } else if constexpr (std::is_same_v<T, Str>) {
            text(x.s);
          } else if constexpr (std::is_same_v<T, Tuple> || std::is_same_v<T, List>) {
            word(x.items.size());
            for (const auto& i : x.items) value(i);
          } else if constexpr (std::is_same_v<T, Sealed>) {
            value(Value::prins(x.ps));
            value(x.v);
          } else if constexpr (std::is_same_v<T, VMap>) {
            word(x.entries.size());
            for (const auto& [p, e] : x.entries) {
              text(p.name);
              value(e);
            }
          } else if constexpr (std::is_same_v<T, Closure>) {
            text(x.param);
            text(x.self.value_or(""));
            env(x.env);
          } else if constexpr (std::is_same_v<T, ShareHandle>) {
            value(Value::prins(x.parties));
            word(x.words.size());
            for (const auto& [p, w] : x.words) {
              text(p.name);
              word(w);
            }
          }
        },
        v.node());
  }
};

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_value(const Value& v) {
  Hasher h;
  h.value(v);
  return h.h;
}

ShareContext make_share_context(const PrinSet& ps, const Closure& thunk) {
  std::set<std::string> bound{thunk.param};
  if (thunk.self) bound.insert(*thunk.self);
  std::vector<std::pair<std::string, Value>> captured;
  for (const auto& name : free_vars(*thunk.body)) {
    if (bound.contains(name)) continue;
    if (const Value* v = thunk.env.lookup(name)) captured.emplace_back(name, *v);
  }
  ShareContext ctx;
  for (const auto& p : ps) {
    Hasher h;
    h.text(p.name);
    for (const auto& [name, v] : captured) {
      h.text(name);
      h.value(slice_v(p, v));
    }
    ctx.nonces.emplace(p, h.h);
  }
  return ctx;
}

std::uint64_t share_mask(const ShareContext& ctx, const Principal& p, std::uint64_t k) {
  auto it = ctx.nonces.find(p);
  if (it == ctx.nonces.end()) throw Error(Errc::PartySetMismatch, p.name + " is not part of this block");
  return mix64(it->second ^ mix64(k + 1));
}

Value mk_sh(const Value& v, const PrinSet& ps, ShareContext& ctx) {
  const auto* i = v.get_if<Int>();
  if (i == nullptr) throw Error(Errc::CanShError, "only integers can be shared, got " + show(v));
  std::uint64_t k = ctx.created++;
  ShareHandle h{ps, {}};
  std::uint64_t acc = static_cast<std::uint64_t>(i->n);
  for (const auto& p : ps) {
    if (p == designated_party(ps)) continue;
    std::uint64_t m = share_mask(ctx, p, k);
    h.words.emplace(p, m);
    acc ^= m;
  }
  h.words.emplace(designated_party(ps), acc);
  return Value::share(std::move(h));
}

Value comb_sh(const Value& v, const PrinSet& ps) {
  const auto* h = v.get_if<ShareHandle>();
  if (h == nullptr) throw Error(Errc::FfiTypeError, "comb_sh expects a share, got " + show(v));
  if (h->parties != ps) {
    throw Error(Errc::PartySetMismatch,
                "share of " + h->parties.to_string() + " combined in a block of " + ps.to_string());
  }
  return Value::integer(v_of_sh(*h));
}

std::int64_t v_of_sh(const ShareHandle& h) {
  std::uint64_t acc = 0;
  for (const auto& p : h.parties) {
    auto it = h.words.find(p);
    if (it == h.words.end()) throw Error(Errc::FfiTypeError, "share word of " + p.name + " is not available");
    acc ^= it->second;
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace wysx
