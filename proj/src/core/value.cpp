#include "wysx/value.hpp"

#include <sstream>

#include "wysx/expr.hpp"

namespace wysx {

struct Env::Node {
  std::string name;
  Value value;
  std::shared_ptr<const Node> next;
};

Env Env::bind(std::string name, Value value) const {
  Env out;
  out.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(value), head_});
  return out;
}

const Value* Env::lookup(std::string_view name) const {
  for (const Node* n = head_.get(); n != nullptr; n = n->next.get()) {
    if (n->name == name) return &n->value;
  }
  return nullptr;
}

std::map<std::string, Value> Env::bindings() const {
  std::map<std::string, Value> out;
  for (const Node* n = head_.get(); n != nullptr; n = n->next.get()) {
    out.emplace(n->name, n->value);  // first seen is the innermost
  }
  return out;
}

Env Env::from(const std::map<std::string, Value>& bindings) {
  Env out;
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) out = out.bind(it->first, it->second);
  return out;
}

bool Env::operator==(const Env& other) const {
  if (head_ == other.head_) return true;
  return bindings() == other.bindings();
}

bool Tuple::operator==(const Tuple& o) const { return items == o.items; }
bool List::operator==(const List& o) const { return items == o.items; }
bool VMap::operator==(const VMap& o) const { return entries == o.entries; }

bool Closure::operator==(const Closure& o) const {
  return param == o.param && self == o.self && same_expr(body, o.body) && env == o.env;
}

Value::Value() : node_(std::make_shared<const Node>(Unit{})) {}
Value::Value(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

Value Value::sealed(PrinSet s, Value v) { return Value(Sealed{std::move(s), std::move(v)}); }

bool Value::operator==(const Value& other) const {
  if (node_ == other.node_) return true;
  return *node_ == *other.node_;
}

namespace {

void show_into(std::ostream& os, const Value& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Principal>) {
          os << "prin " << x.name;
        } else if constexpr (std::is_same_v<T, PrinSet>) {
          os << x.to_string();
        } else if constexpr (std::is_same_v<T, Unit>) {
          os << "()";
        } else if constexpr (std::is_same_v<T, Bool>) {
          os << (x.b ? "true" : "false");
        } else if constexpr (std::is_same_v<T, Int>) {
          os << x.n;
        } else if constexpr (std::is_same_v<T, Str>) {
          os << '"' << x.s << '"';
        } else if constexpr (std::is_same_v<T, Tuple> || std::is_same_v<T, List>) {
          os << (std::is_same_v<T, Tuple> ? "(" : "[");
          for (std::size_t i = 0; i < x.items.size(); ++i) {
            if (i) os << ", ";
            show_into(os, x.items[i]);
          }
          os << (std::is_same_v<T, Tuple> ? ")" : "]");
        } else if constexpr (std::is_same_v<T, Sealed>) {
          os << "sealed " << x.ps.to_string() << " ";
          show_into(os, x.v);
        } else if constexpr (std::is_same_v<T, VMap>) {
          os << "[";
          bool first = true;
          for (const auto& [p, e] : x.entries) {
            if (!first) os << "; ";
            first = false;
            os << p.name << " -> ";
            show_into(os, e);
          }
          os << "]";
        } else if constexpr (std::is_same_v<T, Closure>) {
          os << (x.self ? "<fix " + *x.self + ">" : std::string("<closure>"));
        } else if constexpr (std::is_same_v<T, Opaque>) {
          os << "●";
        } else if constexpr (std::is_same_v<T, ShareHandle>) {
          os << "sh" << x.parties.to_string() << "{";
          bool first = true;
          for (const auto& [p, w] : x.words) {
            if (!first) os << ",";
            first = false;
            os << p.name << ":" << std::hex << w << std::dec;
          }
          os << "}";
        }
      },
      v.node());
}

}  // namespace

std::string show(const Value& v) {
  std::ostringstream os;
  show_into(os, v);
  return os.str();
}

}  // namespace wysx
