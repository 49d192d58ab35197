#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "wysx/expr.hpp"
#include "wysx/value.hpp"

namespace wysx::testing {

using Rng = std::mt19937_64;

/// Non-empty subset of `from`, uniformly among non-empty subsets.
PrinSet random_subset(Rng& rng, const PrinSet& from);

/// A logical value of nesting depth <= `depth` that every party of
/// `universe` can jointly reconstruct from its slices: each sealed set
/// intersects the parties that can see its position, and map entries and
/// share words only appear where their owner can see them.
Value random_value(Rng& rng, int depth, const PrinSet& universe);

/// Inputs for random programs: in_a, in_b, in_c sealed to their owner,
/// and a public integer k.
Env random_inputs(Rng& rng, const PrinSet& universe);

/// A well-formed program of depth <= `depth` over the variables of
/// random_inputs, without recursion. Mode side conditions are respected
/// by construction, so the single-threaded run never gets stuck.
ExprPtr random_program(Rng& rng, int depth, const PrinSet& universe);

/// Any syntactically valid expression (not necessarily well-formed), for
/// printer/parser round trips.
ExprPtr random_expr(Rng& rng, int depth);

}  // namespace wysx::testing
