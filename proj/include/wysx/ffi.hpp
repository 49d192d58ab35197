#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wysx/value.hpp"

namespace wysx {

/// A registered host function. Functions are pure and first-order.
/// `structural` functions only rearrange their arguments and therefore
/// accept sealed values and share handles nested inside lists and tuples.
struct HostFn {
  std::string name;
  std::size_t arity;
  std::function<Value(std::span<const Value>)> fn;
  bool structural = false;
};

class FfiRegistry {
public:
  void add(HostFn fn);
  const HostFn* find(std::string_view name) const;

  /// Checks arity and argument shape, then calls the function.
  Value exec(std::string_view name, std::span<const Value> args) const;

  std::vector<std::string> names() const;

private:
  std::map<std::string, HostFn, std::less<>> fns_;
};

/// Integers, booleans, strings, tuples and lists: the functions the bundled
/// programs use.
const FfiRegistry& builtin_ffi();

inline Value exec_ffi(std::string_view name, std::span<const Value> args) {
  return builtin_ffi().exec(name, args);
}

/// Names handled by the stepper because they depend on the current mode.
inline bool is_share_primitive(std::string_view name) {
  return name == "mk_sh" || name == "comb_sh";
}

/// Deterministic pseudo-random integer in [0, m) from a seed and a counter
/// (splitmix64). Not cryptographic.
std::int64_t seeded_rand(std::int64_t seed, std::int64_t counter, std::int64_t m);

}  // namespace wysx
