#include <algorithm>

#include "wysx/error.hpp"
#include "wysx/oracles.hpp"

namespace wysx::oracle {

namespace {

const PrinSet& alice() {
  static const PrinSet s{"a"};
  return s;
}
const PrinSet& bob() {
  static const PrinSet s{"b"};
  return s;
}

}  // namespace

bool median_pre(Pair a, Pair b) {
  auto [x1, x2] = a;
  auto [y1, y2] = b;
  return x1 < x2 && y1 < y2 && x1 != y1 && x1 != y2 && x2 != y1 && x2 != y2;
}

std::int64_t median_of(Pair a, Pair b) {
  if (!median_pre(a, b)) throw Error(Errc::PreViolation, "median inputs must be sorted and distinct");
  std::vector<std::int64_t> all{a.first, a.second, b.first, b.second};
  std::sort(all.begin(), all.end());
  return all[1];
}

Trace median_trace(std::int64_t m) { return {tmsg(Value::integer(m))}; }

Trace opt_trace(Pair a, Pair b, std::int64_t m) {
  return {tmsg(Value::boolean(a.first > b.first)), tscope(alice(), {}), tscope(bob(), {}), tmsg(Value::integer(m))};
}

Trace opt_trace_leaky(Pair a, Pair b, std::int64_t m) {
  bool cmp = a.first > b.first;
  std::int64_t x3 = cmp ? a.first : a.second;
  std::int64_t y3 = cmp ? b.second : b.first;
  return {tmsg(Value::boolean(cmp)), tmsg(Value::integer(x3)), tmsg(Value::integer(y3)), tmsg(Value::integer(m))};
}

std::vector<bool> trace_psi(const IntList& la, const IntList& lb) {
  std::vector<bool> out;
  for (auto x : la) {
    for (auto y : lb) out.push_back(x == y);
  }
  return out;
}

std::vector<bool> trace_psi_opt(const IntList& la, const IntList& lb) {
  std::vector<bool> out;
  IntList remaining = lb;
  for (auto x : la) {
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      out.push_back(x == *it);
      if (x == *it) {
        remaining.erase(it);
        break;
      }
    }
  }
  return out;
}

std::vector<bool> psi_opt_from_interim(std::size_t na, std::size_t nb, const std::vector<bool>& tr) {
  std::vector<bool> out;
  std::vector<std::size_t> remaining;
  for (std::size_t j = 0; j < nb; ++j) remaining.push_back(j);
  for (std::size_t i = 0; i < na; ++i) {
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      bool hit = tr.at(i * nb + *it);
      out.push_back(hit);
      if (hit) {
        remaining.erase(it);
        break;
      }
    }
  }
  return out;
}

IntList intersection(const IntList& in_order, const IntList& other) {
  IntList out;
  for (auto x : in_order) {
    if (std::find(other.begin(), other.end(), x) != other.end()) out.push_back(x);
  }
  return out;
}

bool is_permutation(const std::vector<bool>& a, const std::vector<bool>& b) {
  return a.size() == b.size() && std::count(a.begin(), a.end(), true) == std::count(b.begin(), b.end(), true);
}

bool is_fresh(const IntList& history, std::int64_t card) {
  return std::find(history.begin(), history.end(), card) == history.end();
}

std::int64_t card_of(std::int64_t r1, std::int64_t r2, std::int64_t r3) { return (r1 + r2 + r3) % 52; }

}  // namespace wysx::oracle
