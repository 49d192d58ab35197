#include "wysx/ffi.hpp"

#include <algorithm>

#include "wysx/error.hpp"

namespace wysx {

namespace {

bool has_bare_opaque(const Value& v) {
  if (v.is_opaque()) return true;
  if (const auto* t = v.get_if<Tuple>()) return std::any_of(t->items.begin(), t->items.end(), has_bare_opaque);
  if (const auto* l = v.get_if<List>()) return std::any_of(l->items.begin(), l->items.end(), has_bare_opaque);
  return false;
}

bool has_hidden(const Value& v) {
  if (v.is<Sealed>() || v.is<ShareHandle>() || v.is<Closure>() || v.is<VMap>()) return true;
  if (const auto* t = v.get_if<Tuple>()) return std::any_of(t->items.begin(), t->items.end(), has_hidden);
  if (const auto* l = v.get_if<List>()) return std::any_of(l->items.begin(), l->items.end(), has_hidden);
  return false;
}

[[noreturn]] void type_error(std::string_view fn, const std::string& what) {
  throw Error(Errc::FfiTypeError, std::string(fn) + ": " + what);
}

std::int64_t as_int(std::string_view fn, const Value& v) {
  if (const auto* i = v.get_if<Int>()) return i->n;
  type_error(fn, "expected int, got " + show(v));
}

bool as_bool(std::string_view fn, const Value& v) {
  if (const auto* b = v.get_if<Bool>()) return b->b;
  type_error(fn, "expected bool, got " + show(v));
}

const std::vector<Value>& as_list(std::string_view fn, const Value& v) {
  if (const auto* l = v.get_if<List>()) return l->items;
  type_error(fn, "expected list, got " + show(v));
}

const std::vector<Value>& as_pair(std::string_view fn, const Value& v) {
  const auto* t = v.get_if<Tuple>();
  if (t == nullptr || t->items.size() != 2) type_error(fn, "expected pair, got " + show(v));
  return t->items;
}

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

using Args = std::span<const Value>;

void add_int_op(FfiRegistry& r, std::string name, std::int64_t (*op)(std::int64_t, std::int64_t)) {
  r.add({name, 2, [name, op](Args a) { return Value::integer(op(as_int(name, a[0]), as_int(name, a[1]))); }});
}

void add_cmp(FfiRegistry& r, std::string name, bool (*op)(std::int64_t, std::int64_t)) {
  r.add({name, 2, [name, op](Args a) { return Value::boolean(op(as_int(name, a[0]), as_int(name, a[1]))); }});
}

FfiRegistry make_builtins() {
  FfiRegistry r;
  add_int_op(r, "add", wrap_add);
  add_int_op(r, "sub", wrap_sub);
  add_int_op(r, "mul", wrap_mul);
  r.add({"neg", 1, [](Args a) { return Value::integer(wrap_sub(0, as_int("neg", a[0]))); }});
  add_cmp(r, "gt", [](std::int64_t x, std::int64_t y) { return x > y; });
  add_cmp(r, "ge", [](std::int64_t x, std::int64_t y) { return x >= y; });
  add_cmp(r, "lt", [](std::int64_t x, std::int64_t y) { return x < y; });
  add_cmp(r, "le", [](std::int64_t x, std::int64_t y) { return x <= y; });
  r.add({"eq", 2, [](Args a) { return Value::boolean(a[0] == a[1]); }});
  r.add({"neq", 2, [](Args a) { return Value::boolean(!(a[0] == a[1])); }});
  r.add({"not", 1, [](Args a) { return Value::boolean(!as_bool("not", a[0])); }});
  r.add({"and", 2, [](Args a) { return Value::boolean(as_bool("and", a[0]) && as_bool("and", a[1])); }});
  r.add({"or", 2, [](Args a) { return Value::boolean(as_bool("or", a[0]) || as_bool("or", a[1])); }});

  r.add({"mk_tuple", 2, [](Args a) { return Value::tuple({a[0], a[1]}); }, true});
  r.add({"fst", 1, [](Args a) { return as_pair("fst", a[0])[0]; }, true});
  r.add({"snd", 1, [](Args a) { return as_pair("snd", a[0])[1]; }, true});

  r.add({"nil", 0, [](Args) { return Value::list({}); }, true});
  r.add({"cons", 2,
         [](Args a) {
           std::vector<Value> out{a[0]};
           const auto& tail = as_list("cons", a[1]);
           out.insert(out.end(), tail.begin(), tail.end());
           return Value::list(std::move(out));
         },
         true});
  r.add({"hd", 1,
         [](Args a) {
           const auto& l = as_list("hd", a[0]);
           if (l.empty()) type_error("hd", "empty list");
           return l.front();
         },
         true});
  r.add({"tl", 1,
         [](Args a) {
           const auto& l = as_list("tl", a[0]);
           if (l.empty()) type_error("tl", "empty list");
           return Value::list({l.begin() + 1, l.end()});
         },
         true});
  r.add({"is_nil", 1, [](Args a) { return Value::boolean(as_list("is_nil", a[0]).empty()); }, true});
  r.add({"length", 1,
         [](Args a) { return Value::integer(static_cast<std::int64_t>(as_list("length", a[0]).size())); },
         true});
  r.add({"append", 2,
         [](Args a) {
           std::vector<Value> out = as_list("append", a[0]);
           const auto& tail = as_list("append", a[1]);
           out.insert(out.end(), tail.begin(), tail.end());
           return Value::list(std::move(out));
         },
         true});
  r.add({"rev", 1,
         [](Args a) {
           std::vector<Value> out = as_list("rev", a[0]);
           std::reverse(out.begin(), out.end());
           return Value::list(std::move(out));
         },
         true});
  r.add({"list_nth", 2,
         [](Args a) {
           const auto& l = as_list("list_nth", a[0]);
           auto i = as_int("list_nth", a[1]);
           if (i < 0 || static_cast<std::size_t>(i) >= l.size()) type_error("list_nth", "index out of range");
           return l[static_cast<std::size_t>(i)];
         },
         true});
  r.add({"enumerate", 1,
         [](Args a) {
           std::vector<Value> out;
           const auto& l = as_list("enumerate", a[0]);
           for (std::size_t i = 0; i < l.size(); ++i) {
             out.push_back(Value::tuple({Value::integer(static_cast<std::int64_t>(i)), l[i]}));
           }
           return Value::list(std::move(out));
         },
         true});
  // Keep l[i] whenever matches[i] is not -1.
  r.add({"filter_matched", 2,
         [](Args a) {
           const auto& l = as_list("filter_matched", a[0]);
           const auto& m = as_list("filter_matched", a[1]);
           if (l.size() != m.size()) type_error("filter_matched", "length mismatch");
           std::vector<Value> out;
           for (std::size_t i = 0; i < l.size(); ++i) {
             if (as_int("filter_matched", m[i]) != -1) out.push_back(l[i]);
           }
           return Value::list(std::move(out));
         },
         true});
  // Keep l[j] whenever j occurs in matches.
  r.add({"select_matched", 2,
         [](Args a) {
           const auto& l = as_list("select_matched", a[0]);
           const auto& m = as_list("select_matched", a[1]);
           std::vector<Value> out;
           for (std::size_t j = 0; j < l.size(); ++j) {
             bool hit = std::any_of(m.begin(), m.end(), [&](const Value& x) {
               return as_int("select_matched", x) == static_cast<std::int64_t>(j);
             });
             if (hit) out.push_back(l[j]);
           }
           return Value::list(std::move(out));
         },
         true});

  r.add({"list_mem", 2,
         [](Args a) {
           const auto& l = as_list("list_mem", a[1]);
           return Value::boolean(std::find(l.begin(), l.end(), a[0]) != l.end());
         }});
  r.add({"list_intersect", 2,
         [](Args a) {
           const auto& x = as_list("list_intersect", a[0]);
           const auto& y = as_list("list_intersect", a[1]);
           std::vector<Value> out;
           for (const auto& v : x) {
             if (std::find(y.begin(), y.end(), v) != y.end()) out.push_back(v);
           }
           return Value::list(std::move(out));
         }});
  r.add({"rand_mod", 3, [](Args a) {
           auto m = as_int("rand_mod", a[2]);
           if (m <= 0) type_error("rand_mod", "modulus must be positive");
           return Value::integer(seeded_rand(as_int("rand_mod", a[0]), as_int("rand_mod", a[1]), m));
         }});
  return r;
}

}  // namespace

void FfiRegistry::add(HostFn fn) {
  auto name = fn.name;
  fns_.insert_or_assign(std::move(name), std::move(fn));
}

const HostFn* FfiRegistry::find(std::string_view name) const {
  auto it = fns_.find(name);
  return it == fns_.end() ? nullptr : &it->second;
}

Value FfiRegistry::exec(std::string_view name, std::span<const Value> args) const {
  const HostFn* fn = find(name);
  if (fn == nullptr) throw Error(Errc::UnknownFfi, std::string(name));
  if (args.size() != fn->arity) {
    throw Error(Errc::ArityError, std::string(name) + " expects " + std::to_string(fn->arity) + " arguments, got " +
                                      std::to_string(args.size()));
  }
  for (const auto& a : args) {
    if (has_bare_opaque(a)) throw Error(Errc::OpaqueArg, std::string(name) + " applied to " + show(a));
    if (!fn->structural && has_hidden(a)) {
      throw Error(Errc::FfiTypeError, std::string(name) + " cannot inspect " + show(a));
    }
  }
  return fn->fn(args);
}

std::vector<std::string> FfiRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, f] : fns_) out.push_back(n);
  return out;
}

const FfiRegistry& builtin_ffi() {
  static const FfiRegistry registry = make_builtins();
  return registry;
}

std::int64_t seeded_rand(std::int64_t seed, std::int64_t counter, std::int64_t m) {
  std::uint64_t z = static_cast<std::uint64_t>(seed) * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(counter) +
                    0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<std::int64_t>(z % static_cast<std::uint64_t>(m));
}

}  // namespace wysx
