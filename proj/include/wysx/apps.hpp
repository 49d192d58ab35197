#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wysx/expr.hpp"
#include "wysx/machine.hpp"
#include "wysx/value.hpp"

namespace wysx::apps {

/// Names of the bundled programs: median, median_opt, psi, psi_interim,
/// psi_opt, check_fresh, deal.
const std::vector<std::string>& program_names();
/// Source text of a bundled program; throws InputError for unknown names.
std::string_view program_text(std::string_view name);
/// Parsed bundled program (parsed once, then shared).
ExprPtr program(std::string_view name);

PrinSet parties_ab();
PrinSet parties_abc();

using Pair = std::pair<std::int64_t, std::int64_t>;
using IntList = std::vector<std::int64_t>;

/// in_a = sealed {a} (tuple x1 x2), in_b = sealed {b} (tuple y1 y2).
Env median_inputs(Pair a, Pair b);
/// in_a = sealed {a} la, in_b = sealed {b} lb (the single-block psi).
Env psi_inputs(const IntList& la, const IntList& lb);
/// in_a = list of sealed {a} elements, likewise in_b (psi_interim, psi_opt).
Env psi_elem_inputs(const IntList& la, const IntList& lb);

/// A complete share of `v` among `ps`; `salt` varies the masks.
Value share_of(std::int64_t v, const PrinSet& ps, std::uint64_t salt);
/// history = list of shares of `history`, card = share of `card`, over {a,b,c}.
Env check_fresh_inputs(const IntList& history, std::int64_t card, std::uint64_t salt = 1);
/// shares, seeds = map {a,b,c -> seed}, attempt.
Env deal_inputs(const Value& shares, const std::array<std::int64_t, 3>& seeds, std::int64_t attempt);

/// Integers of a list value.
IntList int_list(const Value& v);

/// ST run of a bundled program among `ps`; throws Stuck / OutOfFuel errors
/// with the rule diagnostics when it does not finish.
StRun run_st(std::string_view name, const Env& env, const PrinSet& ps, std::size_t fuel = kDefaultFuel);

struct DealStep {
  Value shares;        // updated list of shares of dealt cards
  std::int64_t card;   // the new card, or 52 when the draw was not fresh
  bool fresh() const { return card != 52; }
};

/// One run of `deal`. Throws DeckExhausted when 52 cards are already dealt.
DealStep deal_card(const Value& shares, const std::array<std::int64_t, 3>& seeds, std::int64_t attempt);

/// Deal `count` cards, retrying collisions with increasing attempt numbers.
/// Returns the cards in dealing order.
IntList deal_all(const std::array<std::int64_t, 3>& seeds, std::size_t count = 52,
                 std::size_t max_attempts = 100000);

struct ComparisonCount {
  std::size_t naive = 0;      // secure comparisons of psi_interim
  std::size_t optimized = 0;  // secure comparisons of psi_opt
};

/// Counts secure blocks executed by the ST runs of psi_interim and psi_opt.
ComparisonCount psi_comparison_count(const IntList& la, const IntList& lb);

/// Per-party intersection decoded from a psi_interim / psi_opt result.
std::pair<IntList, IntList> psi_outputs(const Value& result);

/// A named program input used by the corpus-wide checks.
struct CorpusCase {
  std::string program;
  std::string label;
  PrinSet parties;
  Env logical;
};

/// Representative inputs for every bundled program, small enough for
/// exhaustive checks to stay fast.
std::vector<CorpusCase> corpus_cases();

}  // namespace wysx::apps
