#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wysx/value.hpp"

namespace wysx {

/// Per-party input views of one logical environment.
struct InputBundle {
  PrinSet parties;
  std::map<Principal, Env> views;  // each already sliced to its party
  Env logical;                     // combine of all views
};

/// Slice every party's file to what that party may see, then combine them
/// into the logical environment (CombineConflict / DomainMismatch when the
/// files disagree).
InputBundle bundle_from_views(const std::map<Principal, Env>& files);

/// "a=path/to/alice.json" -> (a, path). Throws InputError.
std::pair<Principal, std::string> parse_input_spec(std::string_view spec);

/// Whole-file read; throws InputError when the file cannot be opened.
std::string read_file(const std::string& path);

/// A JSON object of variable bindings.
Env load_env_file(const std::string& path);

/// Load `p=FILE` specs.
InputBundle load_inputs(const std::vector<std::string>& specs);

}  // namespace wysx
