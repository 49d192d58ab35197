#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "wysx/ds.hpp"
#include "wysx/oracles.hpp"

namespace wysx::apps {

enum class Side { Alice, Bob };

/// Trace model of median_opt for one input pair.
using MedianTraceFn = std::function<Trace(oracle::Pair a, oracle::Pair b)>;

/// Trace of the ST run of median_opt.
Trace median_opt_st_trace(oracle::Pair a, oracle::Pair b);

/// Delimited release for one side over values lo..hi: whenever two inputs of
/// `side` give the same median against the same counterpart input, `trace`
/// must agree on them. The detail names the first counterexample.
Verdict check_median_release(int lo, int hi, Side side, const MedianTraceFn& trace);

/// Both sides, against the oracle and the interpreter traces.
Verdict check_median_security(int lo, int hi);

/// Every duplicate-free list of length <= max_len over lo..hi.
std::vector<oracle::IntList> distinct_lists(std::size_t max_len, int lo, int hi);

/// Psi-related pairs (equal lengths, equal intersection) have permuted
/// trace_psi, and trace_psi_opt = f(|la|, |lb|, trace_psi).
Verdict check_psi_security(std::size_t max_len, int lo, int hi);

/// check_fresh against the oracle for every history of distinct cards of
/// length <= max_history over 0..max_card, plus a full deal on `seeds`
/// distinct seeds.
Verdict check_cards(std::size_t max_history, int max_card, std::size_t seeds);

}  // namespace wysx::apps
