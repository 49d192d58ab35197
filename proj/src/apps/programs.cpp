#include <map>
#include <mutex>

#include "wysx/apps.hpp"
#include "wysx/error.hpp"
#include "wysx/ffi.hpp"
#include "wysx/sexpr.hpp"
#include "wysx/shares.hpp"

namespace wysx::programs::text {
extern const std::string_view median;
extern const std::string_view median_opt;
extern const std::string_view psi;
extern const std::string_view psi_interim;
extern const std::string_view psi_opt;
extern const std::string_view check_fresh;
extern const std::string_view deal;
}  // namespace wysx::programs::text

namespace wysx::apps {

namespace {

const std::map<std::string, std::string_view, std::less<>>& sources() {
  static const std::map<std::string, std::string_view, std::less<>> m = {
      {"median", programs::text::median},           {"median_opt", programs::text::median_opt},
      {"psi", programs::text::psi},                 {"psi_interim", programs::text::psi_interim},
      {"psi_opt", programs::text::psi_opt},         {"check_fresh", programs::text::check_fresh},
      {"deal", programs::text::deal}};
  return m;
}

Value sealed_int(const char* p, std::int64_t v) { return Value::sealed(PrinSet{p}, Value::integer(v)); }

Value int_list_value(const IntList& l) {
  std::vector<Value> items;
  for (auto x : l) items.push_back(Value::integer(x));
  return Value::list(std::move(items));
}

Value sealed_elems(const char* p, const IntList& l) {
  std::vector<Value> items;
  for (auto x : l) items.push_back(sealed_int(p, x));
  return Value::list(std::move(items));
}

}  // namespace

const std::vector<std::string>& program_names() {
  static const std::vector<std::string> names = {"median", "median_opt", "psi",  "psi_interim",
                                                 "psi_opt", "check_fresh", "deal"};
  return names;
}

std::string_view program_text(std::string_view name) {
  auto it = sources().find(name);
  if (it == sources().end()) throw Error(Errc::InputError, "no bundled program named " + std::string(name));
  return it->second;
}

ExprPtr program(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, ExprPtr, std::less<>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  ExprPtr e = parse_program(program_text(name));
  cache.emplace(std::string(name), e);
  return e;
}

PrinSet parties_ab() { return PrinSet{"a", "b"}; }
PrinSet parties_abc() { return PrinSet{"a", "b", "c"}; }

Env median_inputs(Pair a, Pair b) {
  return Env{}
      .bind("in_a", Value::sealed(PrinSet{"a"}, Value::tuple({Value::integer(a.first), Value::integer(a.second)})))
      .bind("in_b", Value::sealed(PrinSet{"b"}, Value::tuple({Value::integer(b.first), Value::integer(b.second)})));
}

Env psi_inputs(const IntList& la, const IntList& lb) {
  return Env{}
      .bind("in_a", Value::sealed(PrinSet{"a"}, int_list_value(la)))
      .bind("in_b", Value::sealed(PrinSet{"b"}, int_list_value(lb)));
}

Env psi_elem_inputs(const IntList& la, const IntList& lb) {
  return Env{}.bind("in_a", sealed_elems("a", la)).bind("in_b", sealed_elems("b", lb));
}

Value share_of(std::int64_t v, const PrinSet& ps, std::uint64_t salt) {
  ShareContext ctx;
  std::uint64_t i = 0;
  for (const auto& p : ps) ctx.nonces.emplace(p, mix64(salt * 0x100000001b3ULL + ++i));
  return mk_sh(Value::integer(v), ps, ctx);
}

Env check_fresh_inputs(const IntList& history, std::int64_t card, std::uint64_t salt) {
  std::vector<Value> hs;
  for (std::size_t i = 0; i < history.size(); ++i) hs.push_back(share_of(history[i], parties_abc(), salt + i + 1));
  return Env{}.bind("history", Value::list(std::move(hs))).bind("card", share_of(card, parties_abc(), salt));
}

Env deal_inputs(const Value& shares, const std::array<std::int64_t, 3>& seeds, std::int64_t attempt) {
  std::map<Principal, Value> m = {{Principal("a"), Value::integer(seeds[0])},
                                  {Principal("b"), Value::integer(seeds[1])},
                                  {Principal("c"), Value::integer(seeds[2])}};
  return Env{}.bind("shares", shares).bind("seeds", Value::map(std::move(m))).bind("attempt", Value::integer(attempt));
}

IntList int_list(const Value& v) {
  const auto* l = v.get_if<List>();
  if (l == nullptr) throw Error(Errc::FfiTypeError, "expected a list, got " + show(v));
  IntList out;
  for (const auto& x : l->items) {
    const auto* n = x.get_if<Int>();
    if (n == nullptr) throw Error(Errc::FfiTypeError, "expected an integer, got " + show(x));
    out.push_back(n->n);
  }
  return out;
}

StRun run_st(std::string_view name, const Env& env, const PrinSet& ps, std::size_t fuel) {
  StRun r = st_run(program(name), env, ps, fuel);
  if (r.status == StRun::Status::OutOfFuel) throw Error(Errc::OutOfFuel, std::string(name) + " ran out of fuel");
  if (r.status == StRun::Status::Stuck) {
    throw Error(r.stuck.code, std::string(name) + " stuck at " + r.stuck.rule + ": " + r.stuck.reason);
  }
  return r;
}

DealStep deal_card(const Value& shares, const std::array<std::int64_t, 3>& seeds, std::int64_t attempt) {
  const auto* l = shares.get_if<List>();
  if (l == nullptr) throw Error(Errc::InputError, "shares must be a list");
  if (l->items.size() >= 52) throw Error(Errc::DeckExhausted, "all 52 cards have been dealt");
  StRun r = run_st("deal", deal_inputs(shares, seeds, attempt), parties_abc());
  const auto* t = r.value().get_if<Tuple>();
  if (t == nullptr || t->items.size() != 2 || !t->items[1].is<Int>()) {
    throw Error(Errc::FfiTypeError, "deal returned " + show(r.value()));
  }
  return DealStep{t->items[0], t->items[1].get_if<Int>()->n};
}

IntList deal_all(const std::array<std::int64_t, 3>& seeds, std::size_t count, std::size_t max_attempts) {
  IntList cards;
  Value shares = Value::list({});
  for (std::size_t attempt = 0; cards.size() < count; ++attempt) {
    if (attempt >= max_attempts) throw Error(Errc::OutOfFuel, "too many dealing attempts");
    DealStep s = deal_card(shares, seeds, static_cast<std::int64_t>(attempt));
    if (!s.fresh()) continue;
    cards.push_back(s.card);
    shares = s.shares;
  }
  return cards;
}

ComparisonCount psi_comparison_count(const IntList& la, const IntList& lb) {
  Env env = psi_elem_inputs(la, lb);
  ComparisonCount c;
  c.naive = run_st("psi_interim", env, parties_ab()).stats.count("S-assec");
  c.optimized = run_st("psi_opt", env, parties_ab()).stats.count("S-assec");
  return c;
}

std::pair<IntList, IntList> psi_outputs(const Value& result) {
  const Value* v = &result;
  if (const auto* s = v->get_if<Sealed>()) v = &s->v;
  const auto* m = v->get_if<VMap>();
  if (m == nullptr || !m->entries.contains(Principal("a")) || !m->entries.contains(Principal("b"))) {
    throw Error(Errc::FfiTypeError, "expected a map with entries for a and b, got " + show(result));
  }
  return {int_list(m->entries.at(Principal("a"))), int_list(m->entries.at(Principal("b")))};
}

std::vector<CorpusCase> corpus_cases() {
  std::vector<CorpusCase> out;
  const std::vector<std::pair<Pair, Pair>> medians = {
      {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}, {{5, 7}, {1, 2}}, {{2, 8}, {3, 6}}};
  for (const auto& [a, b] : medians) {
    std::string label = "(" + std::to_string(a.first) + "," + std::to_string(a.second) + ") (" +
                        std::to_string(b.first) + "," + std::to_string(b.second) + ")";
    out.push_back({"median", label, parties_ab(), median_inputs(a, b)});
    out.push_back({"median_opt", label, parties_ab(), median_inputs(a, b)});
  }
  const std::vector<std::pair<IntList, IntList>> sets = {
      {{1, 2, 5}, {2, 3, 5}}, {{}, {1}}, {{1, 2}, {3, 4}}, {{4}, {4}}, {{1, 2, 3}, {3, 2, 1}}};
  for (const auto& [la, lb] : sets) {
    std::string label = show(int_list_value(la)) + " " + show(int_list_value(lb));
    out.push_back({"psi", label, parties_ab(), psi_inputs(la, lb)});
    out.push_back({"psi_interim", label, parties_ab(), psi_elem_inputs(la, lb)});
    out.push_back({"psi_opt", label, parties_ab(), psi_elem_inputs(la, lb)});
  }
  const std::vector<std::pair<IntList, std::int64_t>> fresh = {{{3, 7}, 7}, {{3, 7}, 5}, {{}, 4}, {{0, 1, 2}, 2}};
  for (const auto& [h, c] : fresh) {
    out.push_back({"check_fresh", show(int_list_value(h)) + " " + std::to_string(c), parties_abc(),
                   check_fresh_inputs(h, c)});
  }
  const std::array<std::int64_t, 3> seeds = {11, 22, 33};
  out.push_back({"deal", "empty history", parties_abc(), deal_inputs(Value::list({}), seeds, 0)});
  auto history = [](const IntList& cards) {
    std::vector<Value> hs;
    for (std::size_t i = 0; i < cards.size(); ++i) hs.push_back(share_of(cards[i], parties_abc(), 100 + i));
    return Value::list(std::move(hs));
  };
  out.push_back({"deal", "two dealt", parties_abc(), deal_inputs(history({5, 17}), seeds, 1)});
  // The card attempt 0 would draw is already dealt: the run must report a collision.
  std::int64_t drawn =
      (seeded_rand(seeds[0], 0, 52) + seeded_rand(seeds[1], 0, 52) + seeded_rand(seeds[2], 0, 52)) % 52;
  out.push_back({"deal", "collision", parties_abc(), deal_inputs(history({drawn}), seeds, 0)});
  return out;
}

}  // namespace wysx::apps
