#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wysx/trace.hpp"

namespace wysx::oracle {

// Reference functions for the bundled applications. They share no code
// with the interpreters: plain arithmetic over integers and bit lists.

using Pair = std::pair<std::int64_t, std::int64_t>;
using IntList = std::vector<std::int64_t>;

/// x1 < x2, y1 < y2, all four distinct.
bool median_pre(Pair a, Pair b);
/// Second smallest of the four values; throws PreViolation.
std::int64_t median_of(Pair a, Pair b);
/// Trace of the single-block median: the result only.
Trace median_trace(std::int64_t m);
/// Trace of median_opt: first comparison, two empty local scopes, result.
Trace opt_trace(Pair a, Pair b, std::int64_t m);
/// Deliberately wrong trace model for self-testing the security checks: the
/// local scopes are replaced by the values computed inside them.
Trace opt_trace_leaky(Pair a, Pair b, std::int64_t m);

/// Equality bits of every (la[i], lb[j]) pair, row-major.
std::vector<bool> trace_psi(const IntList& la, const IntList& lb);
/// Equality bits observed by the optimized loop: for each element of la,
/// compare against the not-yet-matched elements of lb in order, stopping at
/// the first match, which is then removed.
std::vector<bool> trace_psi_opt(const IntList& la, const IntList& lb);
/// Rebuild trace_psi_opt from the lengths and the full comparison matrix.
std::vector<bool> psi_opt_from_interim(std::size_t na, std::size_t nb, const std::vector<bool>& tr);
/// Common elements in the order of `in_order`.
IntList intersection(const IntList& in_order, const IntList& other);
/// Same elements with the same multiplicities.
bool is_permutation(const std::vector<bool>& a, const std::vector<bool>& b);

/// True iff `card` does not occur in `history`.
bool is_fresh(const IntList& history, std::int64_t card);
/// Card drawn from three contributions: their sum modulo 52.
std::int64_t card_of(std::int64_t r1, std::int64_t r2, std::int64_t r3);

}  // namespace wysx::oracle
