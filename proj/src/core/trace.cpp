#include "wysx/trace.hpp"

namespace wysx {

namespace {

void collect(const Trace& t, std::vector<Value>& out) {
  for (const auto& e : t) {
    if (const auto* m = std::get_if<TMsg>(&e.node)) {
      out.push_back(m->v);
    } else {
      collect(std::get<TScope>(e.node).t, out);
    }
  }
}

}  // namespace

std::vector<Value> messages(const Trace& t) {
  std::vector<Value> out;
  collect(t, out);
  return out;
}

bool has_scope(const Trace& t) {
  for (const auto& e : t) {
    if (std::holds_alternative<TScope>(e.node)) return true;
  }
  return false;
}

}  // namespace wysx
