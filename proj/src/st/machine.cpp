#include "wysx/machine.hpp"

#include "wysx/ffi.hpp"
#include "wysx/shares.hpp"

namespace wysx {

namespace {

using Outcome = std::variant<Next, NeedsSec, Done, Stuck>;

bool opaque_inside(const Value& v) {
  if (v.is_opaque()) return true;
  if (const auto* s = v.get_if<Sealed>()) return opaque_inside(s->v);
  return false;
}

bool sealable(const PrinSet& s, const Value& v, bool captured) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ShareHandle>) {
          return x.parties == s;
        } else if constexpr (std::is_same_v<T, Sealed>) {
          if (captured && !x.ps.intersects(s) && !opaque_inside(x.v)) return false;
          return sealable(s, x.v, captured);
        } else if constexpr (std::is_same_v<T, Tuple> || std::is_same_v<T, List>) {
          for (const auto& i : x.items) {
            if (!sealable(s, i, captured)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, VMap>) {
          for (const auto& [p, e] : x.entries) {
            if (!sealable(s, e, captured)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Closure>) {
          for (const auto& [name, e] : x.env.bindings()) {
            if (!sealable(s, e, true)) return false;
          }
          return true;
        } else {
          return true;
        }
      },
      v.node());
}

class Stepper {
public:
  Stepper(Config c, const Principal* local) : c_(std::move(c)), me_(local) {}

  Outcome step() {
    if (const auto* e = std::get_if<ExprPtr>(&c_.term)) {
      ExprPtr expr = *e;
      return eval(expr);
    }
    if (auto* pending = std::get_if<PendingSec>(&c_.term)) {
      if (me_ != nullptr) return NeedsSec{pending->ps, pending->thunk};
      PendingSec ps = std::move(*pending);
      return enter_sec(ps.ps, ps.thunk);
    }
    if (c_.stack.empty()) {
      Value v = std::get<Value>(c_.term);
      return Done{std::move(v), std::move(c_.trace)};
    }
    return plug();
  }

private:
  Config c_;
  const Principal* me_;  // null: single-threaded semantics

  bool st() const { return me_ == nullptr; }
  std::string_view rule(std::string_view s, std::string_view l) const { return st() ? s : l; }

  Outcome next(std::string_view r) { return Next{std::move(c_), r}; }
  Outcome yield(Value v, std::string_view r) {
    c_.term = std::move(v);
    return next(r);
  }
  Outcome go(ExprPtr e, std::string_view r) {
    c_.term = std::move(e);
    return next(r);
  }
  static Outcome stuck(std::string_view r, std::string reason, Errc code = Errc::Stuck) {
    return Stuck{std::string(r), std::move(reason), code};
  }

  void push(ctx::Ctx k) {
    c_.stack.push_back(Frame{c_.mode, c_.env, std::move(k), std::move(c_.trace)});
    c_.trace.clear();
  }

  /// Restore mode and environment from `f`; the trace becomes f.trace ++ t.
  void resume(Frame& f, Trace t) {
    c_.mode = std::move(f.mode);
    c_.env = std::move(f.env);
    Trace out = std::move(f.trace);
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
    c_.trace = std::move(out);
  }

  Outcome eval(const ExprPtr& e) {
    return std::visit(
        [&](const auto& x) -> Outcome {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Expr::Const>) {
            return yield(x.value, "const");
          } else if constexpr (std::is_same_v<T, Expr::Var>) {
            const Value* v = c_.env.lookup(x.name);
            if (v == nullptr) return stuck("var", "unbound variable " + x.name, Errc::UnboundVariable);
            return yield(*v, "var");
          } else if constexpr (std::is_same_v<T, Expr::Lam>) {
            return yield(Value(Closure{c_.env, x.param, x.body, std::nullopt}), "lam");
          } else if constexpr (std::is_same_v<T, Expr::Fix>) {
            return yield(Value(Closure{c_.env, x.param, x.body, x.self}), "fix");
          } else if constexpr (std::is_same_v<T, Expr::AsPar>) {
            return binary(ctx::BinOp::AsPar, x.ps, x.thunk);
          } else if constexpr (std::is_same_v<T, Expr::AsSec>) {
            return binary(ctx::BinOp::AsSec, x.ps, x.thunk);
          } else if constexpr (std::is_same_v<T, Expr::Seal>) {
            return binary(ctx::BinOp::Seal, x.ps, x.value);
          } else if constexpr (std::is_same_v<T, Expr::MkMap>) {
            return binary(ctx::BinOp::MkMap, x.ps, x.value);
          } else if constexpr (std::is_same_v<T, Expr::Project>) {
            return binary(ctx::BinOp::Project, x.prin, x.map);
          } else if constexpr (std::is_same_v<T, Expr::Concat>) {
            return binary(ctx::BinOp::Concat, x.lhs, x.rhs);
          } else if constexpr (std::is_same_v<T, Expr::App>) {
            return binary(ctx::BinOp::App, x.fn, x.arg);
          } else if constexpr (std::is_same_v<T, Expr::Reveal>) {
            push(ctx::Reveal{});
            return go(x.value, "push");
          } else if constexpr (std::is_same_v<T, Expr::Ffi>) {
            if (x.args.empty()) return call_ffi(x.name, {});
            push(ctx::Ffi{e, {}});
            return go(x.args.front(), "push");
          } else if constexpr (std::is_same_v<T, Expr::Let>) {
            push(ctx::Let{x.name, x.body});
            return go(x.bound, "push");
          } else {
            static_assert(std::is_same_v<T, Expr::If>);
            push(ctx::If{x.then_branch, x.else_branch});
            return go(x.cond, "push");
          }
        },
        e->node);
  }

  Outcome binary(ctx::BinOp op, const ExprPtr& lhs, const ExprPtr& rhs) {
    push(ctx::Left{op, rhs});
    return go(lhs, "push");
  }

  Outcome plug() {
    Value v = std::get<Value>(c_.term);
    Frame f = std::move(c_.stack.back());
    c_.stack.pop_back();
    Trace inner = std::move(c_.trace);
    c_.trace.clear();

    if (auto* k = std::get_if<ctx::AsParRet>(&f.ctx)) {
      PrinSet s = k->ps;
      if (st()) {
        if (!can_seal(s, v)) return stuck("S-parret", "can_seal " + s.to_string() + " fails for " + show(v));
        Trace scoped;
        scoped.push_back(tscope(s, std::move(inner)));
        resume(f, std::move(scoped));
        return yield(Value::sealed(std::move(s), std::move(v)), "S-parret");
      }
      resume(f, std::move(inner));
      return yield(Value::sealed(std::move(s), std::move(v)), "L-parret");
    }
    if (std::holds_alternative<ctx::AsSecRet>(f.ctx)) {
      if (!c_.mode.is_sec()) return stuck("S-secret", "secure return outside Sec mode", Errc::ModeError);
      resume(f, std::move(inner));
      c_.trace.push_back(tmsg(v));
      c_.shares.reset();
      return yield(std::move(v), "S-secret");
    }

    resume(f, std::move(inner));
    return std::visit(
        [&](auto& k) -> Outcome {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ctx::Left>) {
            push(ctx::Right{k.op, std::move(v)});
            return go(k.rhs, "push");
          } else if constexpr (std::is_same_v<T, ctx::Right>) {
            return redex(k.op, k.lhs, std::move(v));
          } else if constexpr (std::is_same_v<T, ctx::Reveal>) {
            return reveal(v);
          } else if constexpr (std::is_same_v<T, ctx::Ffi>) {
            const auto& call = std::get<Expr::Ffi>(k.call->node);
            k.done.push_back(std::move(v));
            if (k.done.size() < call.args.size()) {
              ExprPtr arg = call.args[k.done.size()];
              push(std::move(k));
              return go(std::move(arg), "push");
            }
            return call_ffi(call.name, k.done);
          } else if constexpr (std::is_same_v<T, ctx::Let>) {
            c_.env = c_.env.bind(k.name, std::move(v));
            return go(k.body, rule("S-let", "L-let"));
          } else if constexpr (std::is_same_v<T, ctx::If>) {
            const auto* b = v.get_if<Bool>();
            if (b == nullptr) return stuck("if", "condition is not a boolean: " + show(v), Errc::FfiTypeError);
            return go(b->b ? k.then_branch : k.else_branch, "if");
          } else {
            return stuck("plug", "unexpected return frame");
          }
        },
        f.ctx);
  }

  Outcome redex(ctx::BinOp op, const Value& lhs, Value v) {
    switch (op) {
      case ctx::BinOp::AsPar: return as_par(lhs, v);
      case ctx::BinOp::AsSec: return as_sec(lhs, v);
      case ctx::BinOp::Seal: return seal(lhs, std::move(v));
      case ctx::BinOp::MkMap: return mkmap(lhs, v);
      case ctx::BinOp::Project: return project(lhs, v);
      case ctx::BinOp::Concat: return concat(lhs, v);
      case ctx::BinOp::App: return app(lhs, std::move(v));
    }
    return stuck("redex", "unknown operator");
  }

  Outcome as_par(const Value& ps, const Value& thunk) {
    std::string_view r = rule("S-aspar", "L-aspar1");
    const auto* s = ps.get_if<PrinSet>();
    const auto* f = thunk.get_if<Closure>();
    if (s == nullptr || s->empty()) return stuck(r, "expects a non-empty principal set, got " + show(ps));
    if (f == nullptr) return stuck(r, "expects a thunk, got " + show(thunk));
    if (!c_.mode.is_par()) return stuck(r, "as_par in " + to_string(c_.mode), Errc::ModeError);
    if (st()) {
      if (!s->subset_of(c_.mode.ps)) {
        return stuck(r, s->to_string() + " is not a subset of " + c_.mode.ps.to_string(), Errc::ModeError);
      }
    } else if (!s->contains(*me_)) {
      return yield(Value::sealed(*s, Value::opaque()), "L-aspar2");
    }
    push(ctx::AsParRet{*s});
    if (st()) c_.mode = Mode::par(*s);
    c_.env = thunk_env(*f, Value::unit());
    return go(f->body, r);
  }

  Outcome as_sec(const Value& ps, const Value& thunk) {
    std::string_view r = rule("S-assec", "L-assec");
    const auto* s = ps.get_if<PrinSet>();
    const auto* f = thunk.get_if<Closure>();
    if (s == nullptr || s->empty()) return stuck(r, "expects a non-empty principal set, got " + show(ps));
    if (f == nullptr) return stuck(r, "expects a thunk, got " + show(thunk));
    if (st()) return enter_sec(*s, *f);
    if (!c_.mode.is_par() || !s->contains(*me_)) {
      return stuck(r, me_->name + " cannot join a secure block of " + s->to_string(), Errc::ModeError);
    }
    c_.term = PendingSec{*s, *f};
    return next(r);
  }

  Outcome enter_sec(const PrinSet& s, const Closure& f) {
    if (!(c_.mode == Mode::par(s))) {
      return stuck("S-assec", "as_sec " + s.to_string() + " requires Par " + s.to_string() + ", mode is " +
                                  to_string(c_.mode),
                   Errc::ModeError);
    }
    push(ctx::AsSecRet{});
    c_.mode = Mode::sec(s);
    c_.env = thunk_env(f, Value::unit());
    c_.shares = make_share_context(s, f);
    return go(f.body, "S-assec");
  }

  Outcome seal(const Value& ps, Value v) {
    std::string_view r = rule("S-seal", "L-seal");
    const auto* s = ps.get_if<PrinSet>();
    if (s == nullptr || s->empty()) return stuck(r, "expects a non-empty principal set, got " + show(ps));
    if (st()) {
      if (!s->subset_of(c_.mode.ps)) {
        return stuck(r, s->to_string() + " is not a subset of " + c_.mode.ps.to_string(), Errc::ModeError);
      }
      return yield(Value::sealed(*s, std::move(v)), r);
    }
    return yield(Value::sealed(*s, s->contains(*me_) ? std::move(v) : Value::opaque()), r);
  }

  Outcome reveal(const Value& v) {
    std::string_view r = rule("S-reveal", "L-reveal");
    const auto* sv = v.get_if<Sealed>();
    if (sv == nullptr) return stuck(r, "expects a sealed value, got " + show(v), Errc::FfiTypeError);
    const PrinSet& s1 = c_.mode.ps;
    bool ok = false;
    if (!st()) {
      ok = sv->ps.contains(*me_);
    } else if (c_.mode.is_par()) {
      ok = s1.subset_of(sv->ps);
    } else {
      ok = s1.intersects(sv->ps);
    }
    if (!ok) {
      return stuck(r, "cannot reveal a value sealed for " + sv->ps.to_string() + " in " + to_string(c_.mode),
                   Errc::ModeError);
    }
    return yield(sv->v, r);
  }

  Outcome mkmap(const Value& ps, const Value& v) {
    std::string_view r = rule("S-mkmap", "L-mkmap");
    const auto* s = ps.get_if<PrinSet>();
    if (s == nullptr) return stuck(r, "expects a principal set, got " + show(ps));
    std::map<Principal, Value> m;
    if (st() && c_.mode.is_sec()) {
      if (!s->subset_of(c_.mode.ps)) return stuck(r, s->to_string() + " exceeds " + to_string(c_.mode));
      for (const auto& p : *s) m.emplace(p, v);
      return yield(Value::map(std::move(m)), r);
    }
    const auto* sv = v.get_if<Sealed>();
    if (sv == nullptr) return stuck(r, "expects a sealed value in Par mode, got " + show(v));
    if (st()) {
      if (!s->subset_of(c_.mode.ps) || !s->subset_of(sv->ps)) {
        return stuck(r, s->to_string() + " must be within " + to_string(c_.mode) + " and " + sv->ps.to_string());
      }
      for (const auto& p : *s) m.emplace(p, sv->v);
    } else if (s->contains(*me_)) {
      if (!sv->ps.contains(*me_)) return stuck(r, me_->name + " is not in " + sv->ps.to_string());
      m.emplace(*me_, sv->v);
    }
    return yield(Value::map(std::move(m)), r);
  }

  Outcome project(const Value& prin, const Value& mv) {
    std::string_view r = rule("S-proj", "L-proj");
    const auto* p = prin.get_if<Principal>();
    const auto* m = mv.get_if<VMap>();
    if (p == nullptr) return stuck(r, "expects a principal, got " + show(prin));
    if (m == nullptr) return stuck(r, "expects a map, got " + show(mv));
    if (st()) {
      bool ok = c_.mode.is_par() ? c_.mode.ps == PrinSet::singleton(*p) : c_.mode.ps.contains(*p);
      if (!ok) return stuck(r, "cannot project " + p->name + " in " + to_string(c_.mode), Errc::ModeError);
    } else if (*p != *me_) {
      return stuck(r, me_->name + " cannot project the entry of " + p->name, Errc::ModeError);
    }
    auto it = m->entries.find(*p);
    if (it == m->entries.end()) return stuck(r, "map has no entry for " + p->name);
    return yield(it->second, r);
  }

  Outcome concat(const Value& lhs, const Value& rhs) {
    std::string_view r = rule("S-concat", "L-concat");
    const auto* m1 = lhs.get_if<VMap>();
    const auto* m2 = rhs.get_if<VMap>();
    if (m1 == nullptr || m2 == nullptr) return stuck(r, "expects two maps");
    auto out = m1->entries;
    for (const auto& [p, v] : m2->entries) {
      if (!out.emplace(p, v).second) return stuck(r, "domains overlap at " + p.name);
    }
    return yield(Value::map(std::move(out)), r);
  }

  Outcome app(const Value& fn, Value arg) {
    std::string_view r = rule("S-app", "L-app");
    const auto* f = fn.get_if<Closure>();
    if (f == nullptr) return stuck(r, "applying a non-function " + show(fn), Errc::FfiTypeError);
    c_.env = thunk_env(*f, std::move(arg));
    return go(f->body, r);
  }

  Outcome call_ffi(const std::string& name, const std::vector<Value>& args) {
    std::string_view r = rule("S-ffi", "L-ffi");
    try {
      if (is_share_primitive(name)) {
        if (args.size() != 1) return stuck(r, name + " expects 1 argument", Errc::ArityError);
        if (!c_.mode.is_sec() || !c_.shares) {
          return stuck(r, name + " requires Sec mode, mode is " + to_string(c_.mode), Errc::ModeError);
        }
        if (name == "mk_sh") return yield(mk_sh(args[0], c_.mode.ps, *c_.shares), r);
        return yield(comb_sh(args[0], c_.mode.ps), r);
      }
      return yield(exec_ffi(name, args), r);
    } catch (const Error& e) {
      return stuck(r, e.what(), e.code());
    }
  }
};

}  // namespace

bool can_seal(const PrinSet& s, const Value& v) { return sealable(s, v, false); }

Env thunk_env(const Closure& c, Value arg) {
  Env env = c.env;
  if (c.self) env = env.bind(*c.self, Value(c));
  return env.bind(c.param, std::move(arg));
}

StepOutcome st_step(Config c) {
  Outcome out = Stepper(std::move(c), nullptr).step();
  return std::visit(
      [](auto&& x) -> StepOutcome {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NeedsSec>) {
          return Stuck{"S-assec", "unexpected wait", Errc::Stuck};
        } else {
          return std::move(x);
        }
      },
      std::move(out));
}

LocalOutcome local_step(const Principal& p, Config c) {
  if (!(c.mode == Mode::par(PrinSet::singleton(p)))) {
    return Stuck{"local", "local configuration of " + p.name + " is in " + to_string(c.mode), Errc::ModeError};
  }
  Outcome out = Stepper(std::move(c), &p).step();
  return std::visit([](auto&& x) -> LocalOutcome { return std::move(x); }, std::move(out));
}

StRun st_run_config(Config c, std::size_t fuel) {
  StRun run;
  for (;;) {
    if (c.is_value() && c.stack.empty()) {
      run.status = StRun::Status::Done;
      run.final = std::move(c);
      return run;
    }
    if (run.stats.steps >= fuel) {
      run.status = StRun::Status::OutOfFuel;
      run.final = std::move(c);
      return run;
    }
    StepOutcome out = st_step(std::move(c));
    if (auto* n = std::get_if<Next>(&out)) {
      ++run.stats.steps;
      auto it = run.stats.rules.find(n->rule);
      if (it == run.stats.rules.end()) {
        run.stats.rules.emplace(std::string(n->rule), 1);
      } else {
        ++it->second;
      }
      c = std::move(n->config);
    } else if (auto* s = std::get_if<Stuck>(&out)) {
      run.status = StRun::Status::Stuck;
      run.stuck = std::move(*s);
      return run;
    } else {
      run.status = StRun::Status::Stuck;
      run.stuck = Stuck{"run", "stepper finished a non-terminal configuration", Errc::Stuck};
      return run;
    }
  }
}

StRun st_run(const ExprPtr& e, const Env& env, const PrinSet& ps, std::size_t fuel) {
  return st_run_config(Config::initial(Mode::par(ps), env, e), fuel);
}

}  // namespace wysx
