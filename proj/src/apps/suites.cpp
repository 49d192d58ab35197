#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "wysx/apps.hpp"
#include "wysx/error.hpp"
#include "wysx/sexpr.hpp"
#include "wysx/suites.hpp"

namespace wysx::apps {

namespace {

std::string show_pair(oracle::Pair p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string show_list(const oracle::IntList& l) {
  std::string out = "[";
  for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + std::to_string(l[i]);
  return out + "]";
}

std::vector<oracle::Pair> sorted_pairs(int lo, int hi) {
  std::vector<oracle::Pair> out;
  for (int x = lo; x <= hi; ++x) {
    for (int y = x + 1; y <= hi; ++y) out.emplace_back(x, y);
  }
  return out;
}

void extend(std::vector<oracle::IntList>& out, oracle::IntList& cur, std::size_t max_len, int lo, int hi) {
  out.push_back(cur);
  if (cur.size() == max_len) return;
  for (int v = lo; v <= hi; ++v) {
    if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
    cur.push_back(v);
    extend(out, cur, max_len, lo, hi);
    cur.pop_back();
  }
}

Verdict pass(std::string detail) { return Verdict{Verdict::Status::Pass, std::move(detail)}; }
Verdict fail(std::string detail) { return Verdict{Verdict::Status::Fail, std::move(detail)}; }

}  // namespace

Trace median_opt_st_trace(oracle::Pair a, oracle::Pair b) {
  return run_st("median_opt", median_inputs(a, b), parties_ab()).trace();
}

Verdict check_median_release(int lo, int hi, Side side, const MedianTraceFn& trace) {
  auto pairs = sorted_pairs(lo, hi);
  std::size_t compared = 0;
  for (const auto& fixed : pairs) {
    // Varying inputs of `side` grouped by the median they produce.
    std::map<std::int64_t, std::pair<oracle::Pair, Trace>> first_of;
    for (const auto& varied : pairs) {
      oracle::Pair a = side == Side::Alice ? varied : fixed;
      oracle::Pair b = side == Side::Alice ? fixed : varied;
      if (!oracle::median_pre(a, b)) continue;
      std::int64_t m = oracle::median_of(a, b);
      Trace t = trace(a, b);
      auto [it, fresh] = first_of.emplace(m, std::make_pair(varied, t));
      if (fresh) continue;
      ++compared;
      if (!(it->second.second == t)) {
        std::string who = side == Side::Alice ? "in_a" : "in_b";
        std::string other = side == Side::Alice ? "in_b" : "in_a";
        return fail(who + "1=" + show_pair(it->second.first) + " " + who + "2=" + show_pair(varied) + " " + other +
                    "=" + show_pair(fixed) + ": same median " + std::to_string(m) + " but different traces");
      }
    }
  }
  return pass(std::to_string(compared) + " input pairs with equal medians compared");
}

Verdict check_median_security(int lo, int hi) {
  MedianTraceFn model = [](oracle::Pair a, oracle::Pair b) { return oracle::opt_trace(a, b, oracle::median_of(a, b)); };
  // Interpreter traces are memoized: each input pair is run once.
  std::map<std::pair<oracle::Pair, oracle::Pair>, Trace> cache;
  MedianTraceFn actual = [&](oracle::Pair a, oracle::Pair b) {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, median_opt_st_trace(a, b)).first;
    return it->second;
  };
  std::string detail;
  for (Side side : {Side::Alice, Side::Bob}) {
    const char* name = side == Side::Alice ? "alice" : "bob";
    for (const auto* fn : {&model, &actual}) {
      Verdict v = check_median_release(lo, hi, side, *fn);
      const char* source = fn == &model ? "model" : "interpreter";
      if (!v.pass()) return fail(std::string(name) + " (" + source + "): " + v.detail);
      detail += std::string(detail.empty() ? "" : "; ") + name + "/" + source + ": " + v.detail;
    }
  }
  return pass(detail);
}

std::vector<oracle::IntList> distinct_lists(std::size_t max_len, int lo, int hi) {
  std::vector<oracle::IntList> out;
  oracle::IntList cur;
  extend(out, cur, max_len, lo, hi);
  return out;
}

Verdict check_psi_security(std::size_t max_len, int lo, int hi) {
  auto lists = distinct_lists(max_len, lo, hi);
  using Key = std::tuple<std::size_t, std::size_t, oracle::IntList>;
  std::map<Key, std::tuple<oracle::IntList, oracle::IntList, std::vector<bool>>> representative;
  std::size_t instances = 0, related = 0;
  for (const auto& la : lists) {
    for (const auto& lb : lists) {
      ++instances;
      auto tr = oracle::trace_psi(la, lb);
      auto opt = oracle::trace_psi_opt(la, lb);
      if (oracle::psi_opt_from_interim(la.size(), lb.size(), tr) != opt) {
        return fail("optimized trace not reconstructed for la=" + show_list(la) + " lb=" + show_list(lb));
      }
      auto common = oracle::intersection(la, lb);
      std::sort(common.begin(), common.end());
      auto [it, fresh] = representative.emplace(Key{la.size(), lb.size(), common}, std::make_tuple(la, lb, tr));
      if (fresh) continue;
      ++related;
      const auto& [la0, lb0, tr0] = it->second;
      if (!oracle::is_permutation(tr0, tr)) {
        return fail("la0=" + show_list(la0) + " lb0=" + show_list(lb0) + " la1=" + show_list(la) +
                    " lb1=" + show_list(lb) + ": traces are not permutations");
      }
    }
  }
  return pass(std::to_string(instances) + " instances, " + std::to_string(related) + " related pairs");
}

Verdict check_cards(std::size_t max_history, int max_card, std::size_t seeds) {
  // Share round trip inside one secure block.
  ExprPtr round_trip = parse_program("(as_sec (prins a b c) (lam u (ffi comb_sh (ffi mk_sh v))))");
  for (int v = 0; v < 52; ++v) {
    StRun r = st_run(round_trip, Env{}.bind("v", Value::integer(v)), parties_abc());
    if (!r.done() || !(r.value() == Value::integer(v))) return fail("comb_sh (mk_sh " + std::to_string(v) + ")");
  }
  auto histories = distinct_lists(max_history, 0, max_card);
  std::size_t runs = 0;
  for (const auto& h : histories) {
    for (int card = 0; card <= max_card; ++card) {
      StRun r = run_st("check_fresh", check_fresh_inputs(h, card, runs + 7), parties_abc());
      ++runs;
      if (!(r.value() == Value::boolean(oracle::is_fresh(h, card)))) {
        return fail("check_fresh history=" + show_list(h) + " card=" + std::to_string(card) + " returned " +
                    show(r.value()));
      }
    }
  }
  for (std::size_t i = 0; i < seeds; ++i) {
    std::array<std::int64_t, 3> s = {static_cast<std::int64_t>(1000 + i), static_cast<std::int64_t>(2000 + i),
                                     static_cast<std::int64_t>(3000 + i)};
    auto cards = deal_all(s);
    std::set<std::int64_t> distinct(cards.begin(), cards.end());
    if (cards.size() != 52 || distinct.size() != 52 || *distinct.begin() != 0 || *distinct.rbegin() != 51) {
      return fail("deal with seeds " + std::to_string(s[0]) + "," + std::to_string(s[1]) + "," +
                  std::to_string(s[2]) + " did not yield 52 distinct cards");
    }
  }
  return pass(std::to_string(runs) + " check_fresh runs, " + std::to_string(seeds) + " full deals");
}

}  // namespace wysx::apps
