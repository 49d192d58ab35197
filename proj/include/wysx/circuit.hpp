#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wysx/config.hpp"
#include "wysx/value.hpp"

namespace wysx {

using Wire = std::uint32_t;

struct Gate {
  enum class Op { Xor, And, Not, Const };
  Op op = Op::Const;
  Wire out = 0;
  Wire a = 0, b = 0;  // operands (Xor, And use both; Not uses a)
  bool bit = false;   // Const
};

/// One step from a variable to the leaf an input group reads.
struct PathStep {
  enum class Kind { SealedContent, Index, MapEntry, ShareWord, ClosureVar };
  Kind kind = Kind::SealedContent;
  std::size_t index = 0;  // Index
  std::string name;       // principal (MapEntry, ShareWord) or variable (ClosureVar)

  bool operator==(const PathStep&) const = default;
};

/// A block of input wires supplied by one party: an integer (w bits), a
/// boolean, a 64-bit share word, or the mask of the k-th share created.
struct InputGroup {
  enum class Kind { Int, Bool, Word };
  Principal owner;
  Kind kind = Kind::Int;
  std::string var;              // environment variable the path starts at
  std::vector<PathStep> path;   // empty var and path for masks
  std::optional<std::uint64_t> mask;
  std::vector<Wire> wires;      // least significant bit first
};

/// How a party decodes its output wires back into a value.
struct OutShape {
  enum class Kind { Const, Int, Bool, Tuple, List, Sealed, Map, Share, FilteredList };
  Kind kind = Kind::Const;
  Value constant;                  // Const
  std::vector<Wire> wires;         // Int, Bool, Share (own word), FilteredList (membership bits)
  std::vector<OutShape> children;  // Tuple, List, Sealed (one), Map (one per key), FilteredList
  PrinSet ps;                      // Sealed, Share
  std::vector<Principal> keys;     // Map; Share: the word holder
};

struct Circuit {
  unsigned width = 32;
  PrinSet parties;
  std::size_t num_wires = 0;
  std::vector<Gate> gates;  // topologically ordered
  std::vector<InputGroup> inputs;
  std::map<Principal, OutShape> outputs;

  std::size_t and_count() const;
  /// Output wires a party learns, in decode order.
  std::vector<Wire> output_wires(const Principal& p) const;
};

/// Compile the body of a secure block. `env` is the joint block environment,
/// `ps` the block's parties, `first_share` the number of shares the block
/// has already created. Public values are folded; sealed inputs of a party
/// in `ps` become that party's input wires.
/// Throws NotCircuitable or WidthOverflow.
Circuit compile_sec_thunk(const Env& env, const ExprPtr& body, const PrinSet& ps, unsigned width,
                          std::uint64_t first_share = 0);

/// Compile the pending body of a secure-block configuration.
Circuit compile_block(const Config& sec, unsigned width);

/// Input bits party `p` supplies, from its own view of the environment.
/// Throws MissingInput when the view lacks a needed leaf.
std::vector<bool> bind_inputs(const Circuit& c, const Principal& p, const Env& view,
                              const ShareContext* shares);

/// Evaluate in the clear; returns every wire value.
std::vector<bool> eval_wires(const Circuit& c, const std::map<Principal, std::vector<bool>>& inputs);

/// Evaluate in the clear and decode each party's outputs.
std::map<Principal, Value> eval_circuit(const Circuit& c, const std::map<Principal, std::vector<bool>>& inputs);

/// Decode one party's outputs from the bits of its output wires (in
/// output_wires order).
Value decode_output(const Circuit& c, const Principal& p, const std::vector<bool>& bits);

/// Encode / decode a two's-complement integer of the given width.
std::vector<bool> encode_int(std::int64_t v, unsigned width);
std::int64_t decode_int(const std::vector<bool>& bits);

/// Line-oriented dump: header lines for inputs and outputs, then one gate per
/// line, e.g. `AND w3 <- w1 w2`.
std::string dump(const Circuit& c);

}  // namespace wysx
