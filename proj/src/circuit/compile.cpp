#include <functional>

#include "wysx/circuit.hpp"
#include "wysx/error.hpp"
#include "wysx/expr.hpp"
#include "wysx/ffi.hpp"
#include "wysx/shares.hpp"
#include "wysx/slice.hpp"

namespace wysx {

namespace {

[[noreturn]] void not_circuitable(const std::string& what) { throw Error(Errc::NotCircuitable, what); }

struct Path {
  std::string var;
  std::vector<PathStep> steps;

  Path then(PathStep s) const {
    Path out = *this;
    out.steps.push_back(std::move(s));
    return out;
  }
  std::string key() const {
    std::string k = var;
    for (const auto& s : steps) {
      k += '/';
      k += std::to_string(static_cast<int>(s.kind));
      k += ':';
      k += s.kind == PathStep::Kind::Index ? std::to_string(s.index) : s.name;
    }
    return k;
  }
};

PathStep sealed_step() { return {PathStep::Kind::SealedContent, 0, {}}; }
PathStep index_step(std::size_t i) { return {PathStep::Kind::Index, i, {}}; }
PathStep entry_step(const Principal& p) { return {PathStep::Kind::MapEntry, 0, p.name}; }
PathStep word_step(const Principal& p) { return {PathStep::Kind::ShareWord, 0, p.name}; }
PathStep closure_step(const std::string& name) { return {PathStep::Kind::ClosureVar, 0, name}; }

// ---------------------------------------------------------------------------
// Symbolic values: public constants, wire bundles and structure around them.

struct SymVal;
using Sym = std::shared_ptr<const SymVal>;

/// Lexical environment of the symbolic evaluator. Bindings made while
/// compiling sit in front of a base environment of concrete values, which
/// are lifted on first lookup.
class SymEnv {
public:
  SymEnv(Env base, std::optional<Path> base_path) : base_(std::move(base)), base_path_(std::move(base_path)) {}

  SymEnv bind(std::string name, Sym v) const {
    SymEnv out = *this;
    out.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(v), head_});
    return out;
  }

  template <class Lift>
  Sym lookup(const std::string& name, Lift&& lift) const {
    for (const Node* n = head_.get(); n != nullptr; n = n->next.get()) {
      if (n->name == name) return n->value;
    }
    const Value* v = base_.lookup(name);
    if (v == nullptr) throw Error(Errc::UnboundVariable, "unbound variable " + name);
    Path p = base_path_ ? base_path_->then(closure_step(name)) : Path{name, {}};
    return lift(*v, p);
  }

private:
  struct Node {
    std::string name;
    Sym value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
  Env base_;
  std::optional<Path> base_path_;
};

struct SPub {
  Value v;
};
struct SInt {
  std::vector<Wire> bits;
};
struct SBool {
  Wire w;
};
struct STuple {
  std::vector<Sym> items;
};
struct SList {
  std::vector<Sym> items;
};
struct SSealed {
  PrinSet ps;
  Sym content;
};
struct SMap {
  std::map<Principal, Sym> entries;
};
struct SShare {
  PrinSet parties;
  std::map<Principal, std::vector<Wire>> words;
};
struct SOpaque {};
/// List whose membership is secret: (bit, element) candidates; elements are
/// zeroed when their bit is off.
struct SFiltered {
  std::vector<std::pair<Wire, Sym>> items;
};
struct SClos {
  SymEnv env;
  std::string param;
  ExprPtr body;
  std::optional<std::string> self;
};

struct SymVal {
  std::variant<SPub, SInt, SBool, STuple, SList, SSealed, SMap, SShare, SOpaque, SFiltered, SClos> node;
};

template <class T>
Sym mk(T x) {
  return std::make_shared<const SymVal>(SymVal{std::move(x)});
}
template <class T>
const T* as(const Sym& s) {
  return std::get_if<T>(&s->node);
}

constexpr unsigned kWordBits = 64;

// ---------------------------------------------------------------------------

class Compiler {
public:
  Compiler(PrinSet ps, unsigned width, std::uint64_t first_share) : shares_created_(first_share) {
    if (width < 2 || width > 64) throw Error(Errc::WidthOverflow, "width must be between 2 and 64");
    c_.width = width;
    c_.parties = std::move(ps);
  }

  Circuit run(const Env& env, const ExprPtr& body) {
    Sym result = eval(body, SymEnv(env, std::nullopt));
    for (const auto& p : c_.parties) c_.outputs.emplace(p, out_shape(p, result));
    return std::move(c_);
  }

private:
  Circuit c_;
  std::vector<std::optional<bool>> known_;  // constant value of each wire, if fixed
  std::optional<Wire> lit_[2];
  std::map<std::string, Sym> lifted_;
  std::uint64_t shares_created_;
  int secret_branches_ = 0;
  int depth_ = 0;

  unsigned w() const { return c_.width; }
  const PrinSet& ps() const { return c_.parties; }

  // --- gates -------------------------------------------------------------

  Wire fresh(std::optional<bool> k = std::nullopt) {
    known_.push_back(k);
    return static_cast<Wire>(c_.num_wires++);
  }

  Wire lit(bool b) {
    if (!lit_[b]) {
      Wire o = fresh(b);
      c_.gates.push_back({Gate::Op::Const, o, 0, 0, b});
      lit_[b] = o;
    }
    return *lit_[b];
  }

  std::optional<bool> known(Wire x) const { return known_[x]; }

  Wire NOT(Wire a) {
    if (auto k = known(a)) return lit(!*k);
    Wire o = fresh();
    c_.gates.push_back({Gate::Op::Not, o, a, 0, false});
    return o;
  }
  Wire XOR(Wire a, Wire b) {
    auto ka = known(a), kb = known(b);
    if (ka && kb) return lit(*ka != *kb);
    if (ka) return *ka ? NOT(b) : b;
    if (kb) return *kb ? NOT(a) : a;
    if (a == b) return lit(false);
    Wire o = fresh();
    c_.gates.push_back({Gate::Op::Xor, o, a, b, false});
    return o;
  }
  Wire AND(Wire a, Wire b) {
    auto ka = known(a), kb = known(b);
    if ((ka && !*ka) || (kb && !*kb)) return lit(false);
    if (ka) return b;
    if (kb) return a;
    if (a == b) return a;
    Wire o = fresh();
    c_.gates.push_back({Gate::Op::And, o, a, b, false});
    return o;
  }
  Wire OR(Wire a, Wire b) { return XOR(XOR(a, b), AND(a, b)); }
  Wire MUX(Wire sel, Wire t, Wire e) { return XOR(e, AND(sel, XOR(t, e))); }

  std::vector<Wire> new_input(const Principal& owner, InputGroup::Kind kind, const Path& path,
                              std::optional<std::uint64_t> mask = std::nullopt) {
    std::size_t n = kind == InputGroup::Kind::Int ? w() : kind == InputGroup::Kind::Bool ? 1 : kWordBits;
    InputGroup g{owner, kind, path.var, path.steps, mask, {}};
    for (std::size_t i = 0; i < n; ++i) g.wires.push_back(fresh());
    c_.inputs.push_back(g);
    return g.wires;
  }

  // --- lifting concrete values --------------------------------------------

  Sym lift_var(const Value& v, const Path& path) {
    std::string key = path.key();
    if (auto it = lifted_.find(key); it != lifted_.end()) return it->second;
    Sym s = lift(v, path, std::nullopt);
    lifted_.emplace(std::move(key), s);
    return s;
  }

  /// `owner` unset: the value is known to every party of the block.
  Sym lift(const Value& v, const Path& path, const std::optional<Principal>& owner) {
    return std::visit(
        [&](const auto& x) -> Sym {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Opaque>) {
            return mk(SOpaque{});
          } else if constexpr (std::is_same_v<T, Int> || std::is_same_v<T, Bool>) {
            if (!owner) return mk(SPub{v});
            if constexpr (std::is_same_v<T, Int>) {
              return mk(SInt{new_input(*owner, InputGroup::Kind::Int, path)});
            } else {
              return mk(SBool{new_input(*owner, InputGroup::Kind::Bool, path).front()});
            }
          } else if constexpr (std::is_same_v<T, Unit>) {
            return mk(SPub{v});
          } else if constexpr (std::is_same_v<T, Principal> || std::is_same_v<T, PrinSet> ||
                               std::is_same_v<T, Str>) {
            if (owner) not_circuitable("secret " + show(v));
            return mk(SPub{v});
          } else if constexpr (std::is_same_v<T, Tuple> || std::is_same_v<T, List>) {
            std::vector<Sym> items;
            for (std::size_t i = 0; i < x.items.size(); ++i) items.push_back(lift(x.items[i], path.then(index_step(i)), owner));
            if constexpr (std::is_same_v<T, Tuple>) {
              return mk(STuple{std::move(items)});
            } else {
              return mk(SList{std::move(items)});
            }
          } else if constexpr (std::is_same_v<T, Sealed>) {
            Path inner = path.then(sealed_step());
            if (owner) {
              if (!x.ps.contains(*owner)) return mk(SSealed{x.ps, mk(SOpaque{})});
              return mk(SSealed{x.ps, lift(x.v, inner, owner)});
            }
            if (ps().subset_of(x.ps)) return mk(SSealed{x.ps, lift(x.v, inner, std::nullopt)});
            PrinSet readers = x.ps.intersect(ps());
            if (readers.empty()) return mk(SSealed{x.ps, mk(SOpaque{})});
            return mk(SSealed{x.ps, lift(x.v, inner, readers.front())});
          } else if constexpr (std::is_same_v<T, VMap>) {
            if (owner) not_circuitable("map inside a secret value");
            SMap out;
            for (const auto& [q, e] : x.entries) {
              out.entries.emplace(q, ps().contains(q) ? lift(e, path.then(entry_step(q)), q) : mk(SOpaque{}));
            }
            return mk(std::move(out));
          } else if constexpr (std::is_same_v<T, ShareHandle>) {
            if (owner) not_circuitable("share inside a secret value");
            SShare out{x.parties, {}};
            for (const auto& q : x.parties) {
              if (ps().contains(q) && x.words.contains(q)) {
                out.words.emplace(q, new_input(q, InputGroup::Kind::Word, path.then(word_step(q))));
              }
            }
            return mk(std::move(out));
          } else {
            static_assert(std::is_same_v<T, Closure>);
            if (owner) not_circuitable("function inside a secret value");
            return mk(SClos{SymEnv(x.env, path), x.param, x.body, x.self});
          }
        },
        v.node());
  }

  // --- evaluation -----------------------------------------------------------

  Sym lookup(const SymEnv& env, const std::string& name) {
    return env.lookup(name, [&](const Value& v, const Path& p) { return lift_var(v, p); });
  }

  const PrinSet& prinset_of(const Sym& s, const char* what) {
    const auto* p = as<SPub>(s);
    const PrinSet* set = p ? p->v.get_if<PrinSet>() : nullptr;
    if (set == nullptr) not_circuitable(std::string(what) + " expects a public principal set");
    return *set;
  }

  Sym eval(const ExprPtr& e, const SymEnv& env) {
    return std::visit(
        [&](const auto& x) -> Sym {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Expr::Const>) {
            return mk(SPub{x.value});
          } else if constexpr (std::is_same_v<T, Expr::Var>) {
            return lookup(env, x.name);
          } else if constexpr (std::is_same_v<T, Expr::Lam>) {
            return mk(SClos{env, x.param, x.body, std::nullopt});
          } else if constexpr (std::is_same_v<T, Expr::Fix>) {
            return mk(SClos{env, x.param, x.body, x.self});
          } else if constexpr (std::is_same_v<T, Expr::Let>) {
            Sym v = eval(x.bound, env);
            return eval(x.body, env.bind(x.name, v));
          } else if constexpr (std::is_same_v<T, Expr::App>) {
            Sym f = eval(x.fn, env);
            Sym a = eval(x.arg, env);
            const auto* clos = as<SClos>(f);
            if (clos == nullptr) not_circuitable("application of a non-function");
            if (clos->self) not_circuitable("recursive function " + *clos->self);
            if (++depth_ > 256) not_circuitable("call depth");
            Sym r = eval(clos->body, clos->env.bind(clos->param, a));
            --depth_;
            return r;
          } else if constexpr (std::is_same_v<T, Expr::If>) {
            Sym c = eval(x.cond, env);
            if (const auto* p = as<SPub>(c)) {
              const auto* b = p->v.template get_if<Bool>();
              if (b == nullptr) throw Error(Errc::FfiTypeError, "condition is not a boolean");
              return eval(b->b ? x.then_branch : x.else_branch, env);
            }
            const auto* sb = as<SBool>(c);
            if (sb == nullptr) throw Error(Errc::FfiTypeError, "condition is not a boolean");
            ++secret_branches_;
            Sym t = eval(x.then_branch, env);
            Sym f = eval(x.else_branch, env);
            --secret_branches_;
            return mux(sb->w, t, f);
          } else if constexpr (std::is_same_v<T, Expr::Seal>) {
            PrinSet s = prinset_of(eval(x.ps, env), "seal");
            if (!s.subset_of(ps())) throw Error(Errc::ModeError, "seal " + s.to_string() + " outside the block");
            return mk(SSealed{s, eval(x.value, env)});
          } else if constexpr (std::is_same_v<T, Expr::Reveal>) {
            Sym v = eval(x.value, env);
            const auto* sv = as<SSealed>(v);
            if (sv == nullptr) throw Error(Errc::FfiTypeError, "reveal of a non-sealed value");
            if (!sv->ps.intersects(ps())) {
              throw Error(Errc::ModeError, "cannot reveal a value sealed for " + sv->ps.to_string());
            }
            return sv->content;
          } else if constexpr (std::is_same_v<T, Expr::MkMap>) {
            PrinSet s = prinset_of(eval(x.ps, env), "mkmap");
            if (!s.subset_of(ps())) throw Error(Errc::ModeError, "mkmap " + s.to_string() + " outside the block");
            Sym v = eval(x.value, env);
            SMap m;
            for (const auto& p : s) m.entries.emplace(p, v);
            return mk(std::move(m));
          } else if constexpr (std::is_same_v<T, Expr::Project>) {
            Sym p = eval(x.prin, env);
            Sym m = eval(x.map, env);
            const auto* pp = as<SPub>(p);
            const Principal* who = pp ? pp->v.template get_if<Principal>() : nullptr;
            const auto* sm = as<SMap>(m);
            if (who == nullptr || sm == nullptr) not_circuitable("project expects a principal and a map");
            if (!ps().contains(*who)) throw Error(Errc::ModeError, "cannot project " + who->name);
            auto it = sm->entries.find(*who);
            if (it == sm->entries.end()) throw Error(Errc::FfiTypeError, "map has no entry for " + who->name);
            return it->second;
          } else if constexpr (std::is_same_v<T, Expr::Concat>) {
            Sym l = eval(x.lhs, env);
            Sym r = eval(x.rhs, env);
            const auto* ml = as<SMap>(l);
            const auto* mr = as<SMap>(r);
            if (ml == nullptr || mr == nullptr) not_circuitable("concat expects maps");
            SMap out = *ml;
            for (const auto& [p, v] : mr->entries) {
              if (!out.entries.emplace(p, v).second) throw Error(Errc::FfiTypeError, "concat domains overlap");
            }
            return mk(std::move(out));
          } else if constexpr (std::is_same_v<T, Expr::Ffi>) {
            std::vector<Sym> args;
            for (const auto& a : x.args) args.push_back(eval(a, env));
            return ffi(x.name, args);
          } else {
            not_circuitable("nested as_par/as_sec");
          }
        },
        e->node);
  }

  // --- structure ----------------------------------------------------------

  bool is_public(const Sym& s) const {
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SPub> || std::is_same_v<T, SOpaque>) {
            return true;
          } else if constexpr (std::is_same_v<T, STuple> || std::is_same_v<T, SList>) {
            for (const auto& i : x.items) {
              if (!is_public(i)) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, SSealed>) {
            return is_public(x.content);
          } else if constexpr (std::is_same_v<T, SMap>) {
            for (const auto& [p, e] : x.entries) {
              if (!is_public(e)) return false;
            }
            return true;
          } else {
            return false;
          }
        },
        s->node);
  }

  Value to_value(const Sym& s) const {
    return std::visit(
        [&](const auto& x) -> Value {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SPub>) {
            return x.v;
          } else if constexpr (std::is_same_v<T, SOpaque>) {
            return Value::opaque();
          } else if constexpr (std::is_same_v<T, STuple> || std::is_same_v<T, SList>) {
            std::vector<Value> items;
            for (const auto& i : x.items) items.push_back(to_value(i));
            if constexpr (std::is_same_v<T, STuple>) {
              return Value::tuple(std::move(items));
            } else {
              return Value::list(std::move(items));
            }
          } else if constexpr (std::is_same_v<T, SSealed>) {
            return Value::sealed(x.ps, to_value(x.content));
          } else if constexpr (std::is_same_v<T, SMap>) {
            std::map<Principal, Value> m;
            for (const auto& [p, e] : x.entries) m.emplace(p, to_value(e));
            return Value::map(std::move(m));
          } else {
            not_circuitable("value is not public");
          }
        },
        s->node);
  }

  /// Items of a list, public or symbolic.
  std::vector<Sym> items_of(const Sym& s, const char* fn) {
    if (const auto* l = as<SList>(s)) return l->items;
    if (const auto* p = as<SPub>(s)) {
      if (const auto* l = p->v.get_if<List>()) {
        std::vector<Sym> out;
        for (const auto& v : l->items) out.push_back(mk(SPub{v}));
        return out;
      }
    }
    if (as<SFiltered>(s) != nullptr) not_circuitable(std::string(fn) + " on a list of secret length");
    throw Error(Errc::FfiTypeError, std::string(fn) + " expects a list");
  }

  std::vector<Sym> pair_of(const Sym& s, const char* fn) {
    if (const auto* t = as<STuple>(s); t && t->items.size() == 2) return t->items;
    if (const auto* p = as<SPub>(s)) {
      if (const auto* t = p->v.get_if<Tuple>(); t && t->items.size() == 2) {
        return {mk(SPub{t->items[0]}), mk(SPub{t->items[1]})};
      }
    }
    throw Error(Errc::FfiTypeError, std::string(fn) + " expects a pair");
  }

  std::vector<Wire> int_bits(const Sym& s) {
    if (const auto* i = as<SInt>(s)) return i->bits;
    if (const auto* p = as<SPub>(s)) {
      if (const auto* n = p->v.get_if<Int>()) {
        std::int64_t lo = w() == 64 ? INT64_MIN : -(std::int64_t{1} << (w() - 1));
        std::int64_t hi = w() == 64 ? INT64_MAX : (std::int64_t{1} << (w() - 1)) - 1;
        if (n->n < lo || n->n > hi) {
          throw Error(Errc::WidthOverflow, std::to_string(n->n) + " does not fit in " + std::to_string(w()) + " bits");
        }
        std::vector<Wire> out;
        for (bool b : encode_int(n->n, w())) out.push_back(lit(b));
        return out;
      }
    }
    if (as<SOpaque>(s) != nullptr) throw Error(Errc::OpaqueArg, "integer operation on an opaque value");
    throw Error(Errc::FfiTypeError, "expected an integer");
  }

  Wire bool_bit(const Sym& s) {
    if (const auto* b = as<SBool>(s)) return b->w;
    if (const auto* p = as<SPub>(s)) {
      if (const auto* b = p->v.get_if<Bool>()) return lit(b->b);
    }
    if (as<SOpaque>(s) != nullptr) throw Error(Errc::OpaqueArg, "boolean operation on an opaque value");
    throw Error(Errc::FfiTypeError, "expected a boolean");
  }

  bool int_like(const Sym& s) const {
    if (as<SInt>(s) != nullptr) return true;
    const auto* p = as<SPub>(s);
    return p != nullptr && p->v.is<Int>();
  }
  bool bool_like(const Sym& s) const {
    if (as<SBool>(s) != nullptr) return true;
    const auto* p = as<SPub>(s);
    return p != nullptr && p->v.is<Bool>();
  }

  Sym mux(Wire sel, const Sym& t, const Sym& e) {
    if (is_public(t) && is_public(e) && to_value(t) == to_value(e)) return t;
    if (int_like(t) && int_like(e)) {
      auto a = int_bits(t), b = int_bits(e);
      std::vector<Wire> out;
      for (unsigned i = 0; i < w(); ++i) out.push_back(MUX(sel, a[i], b[i]));
      return mk(SInt{out});
    }
    if (bool_like(t) && bool_like(e)) return mk(SBool{MUX(sel, bool_bit(t), bool_bit(e))});
    auto pointwise = [&](const std::vector<Sym>& a, const std::vector<Sym>& b) {
      if (a.size() != b.size()) not_circuitable("branches of different shapes");
      std::vector<Sym> out;
      for (std::size_t i = 0; i < a.size(); ++i) out.push_back(mux(sel, a[i], b[i]));
      return out;
    };
    if (as<STuple>(t) || as<STuple>(e)) return mk(STuple{pointwise(pair_of(t, "if"), pair_of(e, "if"))});
    if (as<SList>(t) || as<SList>(e)) return mk(SList{pointwise(items_of(t, "if"), items_of(e, "if"))});
    const auto* st = as<SSealed>(t);
    const auto* se = as<SSealed>(e);
    if (st && se && st->ps == se->ps) return mk(SSealed{st->ps, mux(sel, st->content, se->content)});
    const auto* ht = as<SShare>(t);
    const auto* he = as<SShare>(e);
    if (ht && he && ht->parties == he->parties) {
      SShare out{ht->parties, {}};
      for (const auto& [p, wt] : ht->words) {
        auto it = he->words.find(p);
        if (it == he->words.end()) not_circuitable("branches of different shapes");
        std::vector<Wire> word;
        for (unsigned i = 0; i < kWordBits; ++i) word.push_back(MUX(sel, wt[i], it->second[i]));
        out.words.emplace(p, std::move(word));
      }
      return mk(std::move(out));
    }
    const auto* mt = as<SMap>(t);
    const auto* me = as<SMap>(e);
    if (mt && me && mt->entries.size() == me->entries.size()) {
      SMap out;
      for (const auto& [p, v] : mt->entries) {
        auto it = me->entries.find(p);
        if (it == me->entries.end()) not_circuitable("branches of different shapes");
        out.entries.emplace(p, mux(sel, v, it->second));
      }
      return mk(std::move(out));
    }
    not_circuitable("branches of different shapes");
  }

  // --- arithmetic -----------------------------------------------------------

  std::vector<Wire> adder(const std::vector<Wire>& a, const std::vector<Wire>& b, Wire carry) {
    std::vector<Wire> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      Wire ac = XOR(a[i], carry);
      Wire bc = XOR(b[i], carry);
      out.push_back(XOR(ac, b[i]));
      if (i + 1 < a.size()) carry = XOR(carry, AND(ac, bc));  // majority with one AND
    }
    return out;
  }

  std::vector<Wire> negate_bits(const std::vector<Wire>& a) {
    std::vector<Wire> out;
    for (Wire x : a) out.push_back(NOT(x));
    return out;
  }

  std::vector<Wire> sub_bits(const std::vector<Wire>& a, const std::vector<Wire>& b) {
    return adder(a, negate_bits(b), lit(true));
  }

  std::vector<Wire> mul_bits(const std::vector<Wire>& a, const std::vector<Wire>& b) {
    std::vector<Wire> acc(a.size(), lit(false));
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::vector<Wire> partial(a.size(), lit(false));
      for (std::size_t j = i; j < a.size(); ++j) partial[j] = AND(a[j - i], b[i]);
      acc = adder(acc, partial, lit(false));
    }
    return acc;
  }

  /// Signed a > b: the sign of b - a computed one bit wider.
  Wire gt_bits(std::vector<Wire> a, std::vector<Wire> b) {
    a.push_back(a.back());
    b.push_back(b.back());
    return sub_bits(b, a).back();
  }

  Wire eq_bits(const std::vector<Wire>& a, const std::vector<Wire>& b) {
    Wire acc = lit(true);
    for (std::size_t i = 0; i < a.size(); ++i) acc = AND(acc, NOT(XOR(a[i], b[i])));
    return acc;
  }

  Wire eq_sym(const Sym& a, const Sym& b) {
    if (is_public(a) && is_public(b)) return lit(to_value(a) == to_value(b));
    if (int_like(a) && int_like(b)) return eq_bits(int_bits(a), int_bits(b));
    if (bool_like(a) && bool_like(b)) return NOT(XOR(bool_bit(a), bool_bit(b)));
    if (as<STuple>(a) || as<STuple>(b)) {
      auto x = pair_of(a, "eq"), y = pair_of(b, "eq");
      return AND(eq_sym(x[0], y[0]), eq_sym(x[1], y[1]));
    }
    not_circuitable("equality on " + std::string(as<SShare>(a) || as<SShare>(b) ? "shares" : "this value"));
  }

  /// Zero every wire of `s` unless `bit` is set.
  Sym gate_by(Wire bit, const Sym& s) {
    if (int_like(s)) {
      std::vector<Wire> out;
      for (Wire x : int_bits(s)) out.push_back(AND(bit, x));
      return mk(SInt{out});
    }
    if (bool_like(s)) return mk(SBool{AND(bit, bool_bit(s))});
    if (const auto* t = as<STuple>(s)) {
      std::vector<Sym> items;
      for (const auto& i : t->items) items.push_back(gate_by(bit, i));
      return mk(STuple{items});
    }
    not_circuitable("list_intersect over this element type");
  }

  Sym share(const Sym& v) {
    if (secret_branches_ > 0) not_circuitable("mk_sh under a secret condition");
    if (!int_like(v)) throw Error(Errc::CanShError, "only integers can be shared");
    auto bits = int_bits(v);
    std::vector<Wire> word;
    for (unsigned i = 0; i < kWordBits; ++i) word.push_back(i < w() ? bits[i] : bits[w() - 1]);
    std::uint64_t k = shares_created_++;
    SShare out{ps(), {}};
    const Principal& holder = designated_party(ps());
    for (const auto& p : ps()) {
      if (p == holder) continue;
      auto mask = new_input(p, InputGroup::Kind::Word, Path{}, k);
      for (unsigned i = 0; i < kWordBits; ++i) word[i] = XOR(word[i], mask[i]);
      out.words.emplace(p, std::move(mask));
    }
    out.words.emplace(holder, std::move(word));
    return mk(std::move(out));
  }

  Sym combine(const Sym& h) {
    const auto* s = as<SShare>(h);
    if (s == nullptr) throw Error(Errc::FfiTypeError, "comb_sh expects a share");
    if (s->parties != ps()) {
      throw Error(Errc::PartySetMismatch,
                  "share of " + s->parties.to_string() + " combined in a block of " + ps().to_string());
    }
    std::vector<Wire> acc(kWordBits, lit(false));
    for (const auto& p : s->parties) {
      auto it = s->words.find(p);
      if (it == s->words.end()) throw Error(Errc::FfiTypeError, "share word of " + p.name + " is not available");
      for (unsigned i = 0; i < kWordBits; ++i) acc[i] = XOR(acc[i], it->second[i]);
    }
    acc.resize(w());
    return mk(SInt{acc});
  }

  Sym ffi(const std::string& name, const std::vector<Sym>& args) {
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        throw Error(Errc::ArityError, name + " expects " + std::to_string(n) + " arguments");
      }
    };
    if (name == "mk_sh") {
      arity(1);
      return share(args[0]);
    }
    if (name == "comb_sh") {
      arity(1);
      return combine(args[0]);
    }
    bool all_public = true;
    for (const auto& a : args) all_public = all_public && is_public(a);
    if (all_public) {
      std::vector<Value> vals;
      for (const auto& a : args) vals.push_back(to_value(a));
      return mk(SPub{exec_ffi(name, vals)});
    }
    const HostFn* fn = builtin_ffi().find(name);
    if (fn == nullptr) throw Error(Errc::UnknownFfi, name);
    arity(fn->arity);

    using IntOp = std::vector<Wire> (Compiler::*)(const std::vector<Wire>&, const std::vector<Wire>&);
    static const std::map<std::string, IntOp, std::less<>> int_ops = {
        {"add", nullptr}, {"sub", &Compiler::sub_bits}, {"mul", &Compiler::mul_bits}};
    if (auto it = int_ops.find(name); it != int_ops.end()) {
      auto a = int_bits(args[0]), b = int_bits(args[1]);
      if (it->second == nullptr) return mk(SInt{adder(a, b, lit(false))});
      return mk(SInt{(this->*(it->second))(a, b)});
    }
    if (name == "neg") return mk(SInt{sub_bits(int_bits(mk(SPub{Value::integer(0)})), int_bits(args[0]))});
    if (name == "gt") return mk(SBool{gt_bits(int_bits(args[0]), int_bits(args[1]))});
    if (name == "lt") return mk(SBool{gt_bits(int_bits(args[1]), int_bits(args[0]))});
    if (name == "ge") return mk(SBool{NOT(gt_bits(int_bits(args[1]), int_bits(args[0])))});
    if (name == "le") return mk(SBool{NOT(gt_bits(int_bits(args[0]), int_bits(args[1])))});
    if (name == "eq") return mk(SBool{eq_sym(args[0], args[1])});
    if (name == "neq") return mk(SBool{NOT(eq_sym(args[0], args[1]))});
    if (name == "not") return mk(SBool{NOT(bool_bit(args[0]))});
    if (name == "and") return mk(SBool{AND(bool_bit(args[0]), bool_bit(args[1]))});
    if (name == "or") return mk(SBool{OR(bool_bit(args[0]), bool_bit(args[1]))});
    if (name == "mk_tuple") return mk(STuple{{args[0], args[1]}});
    if (name == "fst") return pair_of(args[0], "fst")[0];
    if (name == "snd") return pair_of(args[0], "snd")[1];
    if (name == "cons") {
      std::vector<Sym> out{args[0]};
      for (auto& i : items_of(args[1], "cons")) out.push_back(i);
      return mk(SList{out});
    }
    if (name == "hd" || name == "tl") {
      auto l = items_of(args[0], name.c_str());
      if (l.empty()) throw Error(Errc::FfiTypeError, name + ": empty list");
      if (name == "hd") return l.front();
      return mk(SList{{l.begin() + 1, l.end()}});
    }
    if (name == "is_nil") return mk(SPub{Value::boolean(items_of(args[0], "is_nil").empty())});
    if (name == "length") {
      return mk(SPub{Value::integer(static_cast<std::int64_t>(items_of(args[0], "length").size()))});
    }
    if (name == "append") {
      auto l = items_of(args[0], "append");
      for (auto& i : items_of(args[1], "append")) l.push_back(i);
      return mk(SList{l});
    }
    if (name == "rev") {
      auto l = items_of(args[0], "rev");
      return mk(SList{{l.rbegin(), l.rend()}});
    }
    if (name == "enumerate") {
      auto l = items_of(args[0], "enumerate");
      std::vector<Sym> out;
      for (std::size_t i = 0; i < l.size(); ++i) {
        out.push_back(mk(STuple{{mk(SPub{Value::integer(static_cast<std::int64_t>(i))}), l[i]}}));
      }
      return mk(SList{out});
    }
    if (name == "list_nth") {
      auto l = items_of(args[0], "list_nth");
      if (const auto* p = as<SPub>(args[1])) {
        const auto* i = p->v.get_if<Int>();
        if (i == nullptr || i->n < 0 || static_cast<std::size_t>(i->n) >= l.size()) {
          throw Error(Errc::FfiTypeError, "list_nth: index out of range");
        }
        return l[static_cast<std::size_t>(i->n)];
      }
      if (l.empty()) throw Error(Errc::FfiTypeError, "list_nth: empty list");
      auto idx = int_bits(args[1]);
      Sym acc = l.front();
      for (std::size_t j = 1; j < l.size(); ++j) {
        Wire hit = eq_bits(idx, int_bits(mk(SPub{Value::integer(static_cast<std::int64_t>(j))})));
        acc = mux(hit, l[j], acc);
      }
      return acc;
    }
    if (name == "list_mem") {
      Wire acc = lit(false);
      for (const auto& y : items_of(args[1], "list_mem")) acc = OR(acc, eq_sym(args[0], y));
      return mk(SBool{acc});
    }
    if (name == "list_intersect") {
      auto xs = items_of(args[0], "list_intersect");
      auto ys = items_of(args[1], "list_intersect");
      SFiltered out;
      for (const auto& x : xs) {
        Wire member = lit(false);
        for (const auto& y : ys) member = OR(member, eq_sym(x, y));
        out.items.emplace_back(member, gate_by(member, x));
      }
      return mk(std::move(out));
    }
    not_circuitable("ffi " + name + " on secret data");
  }

  // --- outputs --------------------------------------------------------------

  OutShape constant(Value v) {
    OutShape o;
    o.kind = OutShape::Kind::Const;
    o.constant = std::move(v);
    return o;
  }

  OutShape out_shape(const Principal& p, const Sym& s) {
    return std::visit(
        [&](const auto& x) -> OutShape {
          using T = std::decay_t<decltype(x)>;
          OutShape o;
          if constexpr (std::is_same_v<T, SPub>) {
            return constant(slice_v(p, x.v));
          } else if constexpr (std::is_same_v<T, SOpaque>) {
            return constant(Value::opaque());
          } else if constexpr (std::is_same_v<T, SInt>) {
            o.kind = OutShape::Kind::Int;
            o.wires = x.bits;
          } else if constexpr (std::is_same_v<T, SBool>) {
            o.kind = OutShape::Kind::Bool;
            o.wires = {x.w};
          } else if constexpr (std::is_same_v<T, STuple> || std::is_same_v<T, SList>) {
            o.kind = std::is_same_v<T, STuple> ? OutShape::Kind::Tuple : OutShape::Kind::List;
            for (const auto& i : x.items) o.children.push_back(out_shape(p, i));
          } else if constexpr (std::is_same_v<T, SSealed>) {
            if (!x.ps.contains(p)) return constant(Value::sealed(x.ps, Value::opaque()));
            o.kind = OutShape::Kind::Sealed;
            o.ps = x.ps;
            o.children.push_back(out_shape(p, x.content));
          } else if constexpr (std::is_same_v<T, SMap>) {
            o.kind = OutShape::Kind::Map;
            if (auto it = x.entries.find(p); it != x.entries.end()) {
              o.keys.push_back(p);
              o.children.push_back(out_shape(p, it->second));
            }
          } else if constexpr (std::is_same_v<T, SShare>) {
            o.kind = OutShape::Kind::Share;
            o.ps = x.parties;
            if (auto it = x.words.find(p); it != x.words.end()) {
              o.keys.push_back(p);
              o.wires = it->second;
            }
          } else if constexpr (std::is_same_v<T, SFiltered>) {
            o.kind = OutShape::Kind::FilteredList;
            for (const auto& [bit, elem] : x.items) {
              o.wires.push_back(bit);
              o.children.push_back(out_shape(p, elem));
            }
          } else {
            not_circuitable("function-valued result");
          }
          return o;
        },
        s->node);
  }
};

}  // namespace

Circuit compile_sec_thunk(const Env& env, const ExprPtr& body, const PrinSet& ps, unsigned width,
                          std::uint64_t first_share) {
  return Compiler(ps, width, first_share).run(env, body);
}

Circuit compile_block(const Config& sec, unsigned width) {
  const auto* body = std::get_if<ExprPtr>(&sec.term);
  if (!sec.mode.is_sec() || !sec.stack.empty() || body == nullptr) {
    not_circuitable("configuration is not a fresh secure block");
  }
  return compile_sec_thunk(sec.env, *body, sec.mode.ps, width, sec.shares ? sec.shares->created : 0);
}

}  // namespace wysx
