#pragma once

#include <cstdint>

#include "wysx/config.hpp"
#include "wysx/value.hpp"

namespace wysx {

/// Structural 64-bit hash of a value (FNV-1a over a canonical encoding).
/// Closures hash their parameter names and environment, not their code.
std::uint64_t hash_value(const Value& v);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Share state for a secure block running `thunk` among `ps`. Each party's
/// nonce depends only on that party's own view of the captured variables, so
/// every semantics (and every party of the GMW backend) derives the same
/// masks without communicating.
ShareContext make_share_context(const PrinSet& ps, const Closure& thunk);

/// Mask word of party `p` for the `k`-th share created in a block.
std::uint64_t share_mask(const ShareContext& ctx, const Principal& p, std::uint64_t k);

/// The party that absorbs the shared value into its word: the first member.
inline const Principal& designated_party(const PrinSet& ps) { return ps.front(); }

/// Share integer `v` among `ps`. Advances `ctx.created`.
/// Throws CanShError for non-integers.
Value mk_sh(const Value& v, const PrinSet& ps, ShareContext& ctx);

/// XOR-reconstruct a handle inside a secure block among `ps`.
/// Throws PartySetMismatch when the handle belongs to a different set and
/// FfiTypeError when the argument is not a complete handle.
Value comb_sh(const Value& h, const PrinSet& ps);

/// Test-side accessors mirroring the ghost functions of the share API.
std::int64_t v_of_sh(const ShareHandle& h);
inline const PrinSet& ps_of_sh(const ShareHandle& h) { return h.parties; }

}  // namespace wysx
