#pragma once

#include <vector>

#include "wysx/config.hpp"
#include "wysx/trace.hpp"
#include "wysx/value.hpp"

namespace wysx {

/// Merge two per-party views of one logical value. Opaque absorbs; sealed
/// values with equal sets, maps, tuples, lists, shares and closures with the
/// same code merge structurally; unequal concrete leaves throw CombineConflict.
Value combine_v(const Value& lhs, const Value& rhs);

/// Pointwise combine over identical variable domains (DomainMismatch
/// otherwise).
Env combine_env(const std::vector<Env>& envs);

/// p's view of `v`: sealed contents p may not see become ●, maps keep only
/// p's entry, shares keep only p's word, closures slice their environment.
Value slice_v(const Principal& p, const Value& v);
Env slice_env(const Principal& p, const Env& env);

/// Flat list of the messages p observes.
Trace slice_tr(const Principal& p, const Trace& t);

/// The protocol corresponding to an ST configuration in mode `Par s`.
Protocol slice_cfg(const PrinSet& s, const Config& c);

/// Joint view of a set of parties: combine of their slices.
Value restrict_v(const PrinSet& s, const Value& v);

}  // namespace wysx
