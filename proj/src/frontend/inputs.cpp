#include <fstream>
#include <sstream>

#include "wysx/error.hpp"
#include "wysx/inputs.hpp"
#include "wysx/json_io.hpp"
#include "wysx/slice.hpp"

namespace wysx {

InputBundle bundle_from_views(const std::map<Principal, Env>& files) {
  InputBundle b;
  std::vector<Env> views;
  for (const auto& [p, env] : files) {
    b.parties.insert(p);
    Env view = slice_env(p, env);
    b.views.emplace(p, view);
    views.push_back(view);
  }
  if (!views.empty()) b.logical = combine_env(views);
  return b;
}

std::pair<Principal, std::string> parse_input_spec(std::string_view spec) {
  auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size()) {
    throw Error(Errc::InputError, "expected PRINCIPAL=FILE, got \"" + std::string(spec) + "\"");
  }
  return {Principal(std::string(spec.substr(0, eq))), std::string(spec.substr(eq + 1))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InputError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Env load_env_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InputError, path + ": " + e.what());
  }
  return env_from_json(j);
}

InputBundle load_inputs(const std::vector<std::string>& specs) {
  std::map<Principal, Env> files;
  for (const auto& s : specs) {
    auto [p, path] = parse_input_spec(s);
    if (!files.emplace(p, load_env_file(path)).second) {
      throw Error(Errc::InputError, "duplicate inputs for " + p.name);
    }
  }
  return bundle_from_views(files);
}

}  // namespace wysx
