#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "wysx/circuit.hpp"
#include "wysx/config.hpp"
#include "wysx/ds.hpp"

namespace wysx {

/// Per-party Beaver triple shares for one AND gate: XOR over parties of
/// `a`, `b`, `c` satisfies c = a & b.
struct TripleShare {
  bool a = false, b = false, c = false;
};

/// Trusted dealer: one triple per AND gate (in gate order) for `n` parties,
/// drawn from a PRNG seeded with `seed`. Result is indexed [party][gate].
std::vector<std::vector<TripleShare>> deal_triples(std::size_t n, std::size_t and_gates, std::uint64_t seed);

/// XOR-share `bit` among `n` parties using `rng`.
template <class Rng>
std::vector<bool> share_bit(bool bit, std::size_t n, Rng& rng) {
  std::vector<bool> out(n, false);
  bool acc = bit;
  for (std::size_t i = 1; i < n; ++i) {
    out[i] = (rng() & 1U) != 0;
    acc = acc != out[i];
  }
  out[0] = acc;
  return out;
}

struct GmwResult {
  /// Bits of each party's output wires, in Circuit::output_wires order.
  std::map<Principal, std::vector<bool>> outputs;
  /// Every bit each party received, in arrival order.
  std::map<Principal, std::vector<bool>> transcripts;
  std::size_t and_rounds = 0;
  std::size_t bits_sent = 0;
};

/// Run the n-party GMW protocol over `c` with one thread per party,
/// communicating only through in-memory channels. `inputs` holds each
/// party's input bits (bind_inputs order). Input-sharing randomness is
/// derived from `input_seed`, triples from `dealer_seed`.
GmwResult gmw_eval(const Circuit& c, const std::map<Principal, std::vector<bool>>& inputs,
                   std::uint64_t dealer_seed, std::uint64_t input_seed = 0);

/// Compile a fresh secure-block configuration, bind each party's inputs from
/// its own slice of the block environment, run GMW and decode the outputs.
std::map<Principal, Value> gmw_run_block(const Config& sec, const GmwOptions& opts);

}  // namespace wysx
