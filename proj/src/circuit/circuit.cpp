#include <sstream>

#include "wysx/circuit.hpp"
#include "wysx/error.hpp"
#include "wysx/shares.hpp"

namespace wysx {

namespace {

void collect_wires(const OutShape& s, std::vector<Wire>& out) {
  switch (s.kind) {
    case OutShape::Kind::Const: return;
    case OutShape::Kind::Int:
    case OutShape::Kind::Bool:
    case OutShape::Kind::Share: out.insert(out.end(), s.wires.begin(), s.wires.end()); return;
    case OutShape::Kind::FilteredList:
      for (std::size_t i = 0; i < s.children.size(); ++i) {
        out.push_back(s.wires[i]);
        collect_wires(s.children[i], out);
      }
      return;
    default:
      for (const auto& c : s.children) collect_wires(c, out);
  }
}

Value decode_shape(const OutShape& s, const std::vector<bool>& bits, std::size_t& pos) {
  auto take = [&](std::size_t n) {
    if (pos + n > bits.size()) throw Error(Errc::MissingInput, "too few output bits");
    std::vector<bool> out(bits.begin() + static_cast<std::ptrdiff_t>(pos),
                          bits.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
    return out;
  };
  switch (s.kind) {
    case OutShape::Kind::Const: return s.constant;
    case OutShape::Kind::Int: return Value::integer(decode_int(take(s.wires.size())));
    case OutShape::Kind::Bool: return Value::boolean(take(1).front());
    case OutShape::Kind::Tuple:
    case OutShape::Kind::List: {
      std::vector<Value> items;
      for (const auto& c : s.children) items.push_back(decode_shape(c, bits, pos));
      return s.kind == OutShape::Kind::Tuple ? Value::tuple(std::move(items)) : Value::list(std::move(items));
    }
    case OutShape::Kind::Sealed: return Value::sealed(s.ps, decode_shape(s.children.front(), bits, pos));
    case OutShape::Kind::Map: {
      std::map<Principal, Value> m;
      for (std::size_t i = 0; i < s.keys.size(); ++i) m.emplace(s.keys[i], decode_shape(s.children[i], bits, pos));
      return Value::map(std::move(m));
    }
    case OutShape::Kind::Share: {
      ShareHandle h{s.ps, {}};
      if (!s.keys.empty()) {
        std::uint64_t word = 0;
        auto w = take(s.wires.size());
        for (std::size_t i = 0; i < w.size(); ++i) word |= std::uint64_t{w[i]} << i;
        h.words.emplace(s.keys.front(), word);
      }
      return Value::share(std::move(h));
    }
    case OutShape::Kind::FilteredList: {
      std::vector<Value> items;
      for (const auto& c : s.children) {
        bool keep = take(1).front();
        Value v = decode_shape(c, bits, pos);
        if (keep) items.push_back(std::move(v));
      }
      return Value::list(std::move(items));
    }
  }
  return Value::unit();
}

[[noreturn]] void missing(const Principal& p, const InputGroup& g, const std::string& why) {
  throw Error(Errc::MissingInput, p.name + " cannot supply input " + g.var + ": " + why);
}

const Value& follow(const Principal& p, const InputGroup& g, const Env& view) {
  const Value* v = view.lookup(g.var);
  if (v == nullptr) missing(p, g, "unbound");
  for (const auto& step : g.path) {
    switch (step.kind) {
      case PathStep::Kind::SealedContent: {
        const auto* s = v->get_if<Sealed>();
        if (s == nullptr) missing(p, g, "expected a sealed value");
        v = &s->v;
        break;
      }
      case PathStep::Kind::Index: {
        const std::vector<Value>* items = nullptr;
        if (const auto* t = v->get_if<Tuple>()) items = &t->items;
        if (const auto* l = v->get_if<List>()) items = &l->items;
        if (items == nullptr || step.index >= items->size()) missing(p, g, "shape mismatch");
        v = &(*items)[step.index];
        break;
      }
      case PathStep::Kind::MapEntry: {
        const auto* m = v->get_if<VMap>();
        auto it = m ? m->entries.find(Principal(step.name)) : decltype(m->entries.end()){};
        if (m == nullptr || it == m->entries.end()) missing(p, g, "no map entry for " + step.name);
        v = &it->second;
        break;
      }
      case PathStep::Kind::ClosureVar: {
        const auto* c = v->get_if<Closure>();
        if (c == nullptr) missing(p, g, "expected a closure");
        v = c->env.lookup(step.name);
        if (v == nullptr) missing(p, g, "closure lacks " + step.name);
        break;
      }
      case PathStep::Kind::ShareWord: return *v;  // resolved by the caller
    }
  }
  return *v;
}

void push_word(std::vector<bool>& out, std::uint64_t word) {
  for (unsigned i = 0; i < 64; ++i) out.push_back(((word >> i) & 1U) != 0);
}

}  // namespace

std::size_t Circuit::and_count() const {
  std::size_t n = 0;
  for (const auto& g : gates) n += g.op == Gate::Op::And ? 1 : 0;
  return n;
}

std::vector<Wire> Circuit::output_wires(const Principal& p) const {
  std::vector<Wire> out;
  if (auto it = outputs.find(p); it != outputs.end()) collect_wires(it->second, out);
  return out;
}

std::vector<bool> encode_int(std::int64_t v, unsigned width) {
  std::vector<bool> out;
  auto u = static_cast<std::uint64_t>(v);
  for (unsigned i = 0; i < width; ++i) out.push_back(((u >> i) & 1U) != 0);
  return out;
}

std::int64_t decode_int(const std::vector<bool>& bits) {
  std::uint64_t u = 0;
  for (std::size_t i = 0; i < bits.size() && i < 64; ++i) u |= std::uint64_t{bits[i]} << i;
  if (!bits.empty() && bits.size() < 64 && bits.back()) u |= ~std::uint64_t{0} << bits.size();
  return static_cast<std::int64_t>(u);
}

std::vector<bool> bind_inputs(const Circuit& c, const Principal& p, const Env& view, const ShareContext* shares) {
  std::vector<bool> out;
  for (const auto& g : c.inputs) {
    if (g.owner != p) continue;
    if (g.mask) {
      if (shares == nullptr || !shares->nonces.contains(p)) missing(p, g, "no share context");
      push_word(out, share_mask(*shares, p, *g.mask));
      continue;
    }
    const Value& v = follow(p, g, view);
    switch (g.kind) {
      case InputGroup::Kind::Int: {
        const auto* n = v.get_if<Int>();
        if (n == nullptr) missing(p, g, "expected an integer, got " + show(v));
        if (c.width < 64) {
          std::int64_t lim = std::int64_t{1} << (c.width - 1);
          if (n->n < -lim || n->n >= lim) {
            throw Error(Errc::WidthOverflow,
                        std::to_string(n->n) + " does not fit in " + std::to_string(c.width) + " bits");
          }
        }
        auto bits = encode_int(n->n, c.width);
        out.insert(out.end(), bits.begin(), bits.end());
        break;
      }
      case InputGroup::Kind::Bool: {
        const auto* b = v.get_if<Bool>();
        if (b == nullptr) missing(p, g, "expected a boolean, got " + show(v));
        out.push_back(b->b);
        break;
      }
      case InputGroup::Kind::Word: {
        const auto* h = v.get_if<ShareHandle>();
        if (h == nullptr || g.path.empty()) missing(p, g, "expected a share");
        auto it = h->words.find(Principal(g.path.back().name));
        if (it == h->words.end()) missing(p, g, "share word not visible");
        push_word(out, it->second);
        break;
      }
    }
  }
  return out;
}

std::vector<bool> eval_wires(const Circuit& c, const std::map<Principal, std::vector<bool>>& inputs) {
  std::vector<bool> w(c.num_wires, false);
  std::map<Principal, std::size_t> pos;
  for (const auto& g : c.inputs) {
    auto it = inputs.find(g.owner);
    if (it == inputs.end()) throw Error(Errc::MissingInput, "no inputs from " + g.owner.name);
    std::size_t& at = pos[g.owner];
    if (at + g.wires.size() > it->second.size()) throw Error(Errc::MissingInput, "too few inputs from " + g.owner.name);
    for (Wire x : g.wires) w[x] = it->second[at++];
  }
  for (const auto& g : c.gates) {
    switch (g.op) {
      case Gate::Op::Xor: w[g.out] = w[g.a] != w[g.b]; break;
      case Gate::Op::And: w[g.out] = w[g.a] && w[g.b]; break;
      case Gate::Op::Not: w[g.out] = !w[g.a]; break;
      case Gate::Op::Const: w[g.out] = g.bit; break;
    }
  }
  return w;
}

std::map<Principal, Value> eval_circuit(const Circuit& c, const std::map<Principal, std::vector<bool>>& inputs) {
  auto w = eval_wires(c, inputs);
  std::map<Principal, Value> out;
  for (const auto& p : c.parties) {
    std::vector<bool> bits;
    for (Wire x : c.output_wires(p)) bits.push_back(w[x]);
    out.emplace(p, decode_output(c, p, bits));
  }
  return out;
}

Value decode_output(const Circuit& c, const Principal& p, const std::vector<bool>& bits) {
  auto it = c.outputs.find(p);
  if (it == c.outputs.end()) throw Error(Errc::MissingInput, p.name + " has no outputs");
  std::size_t pos = 0;
  return decode_shape(it->second, bits, pos);
}

std::string dump(const Circuit& c) {
  std::ostringstream os;
  os << "circuit width=" << c.width << " parties=" << c.parties.to_string() << " wires=" << c.num_wires
     << " gates=" << c.gates.size() << " and=" << c.and_count() << '\n';
  for (const auto& g : c.inputs) {
    os << "IN " << g.owner.name << ' ';
    switch (g.kind) {
      case InputGroup::Kind::Int: os << "int"; break;
      case InputGroup::Kind::Bool: os << "bool"; break;
      case InputGroup::Kind::Word: os << "word"; break;
    }
    if (g.mask) {
      os << " mask#" << *g.mask;
    } else {
      os << ' ' << g.var;
      for (const auto& s : g.path) {
        switch (s.kind) {
          case PathStep::Kind::SealedContent: os << ".sealed"; break;
          case PathStep::Kind::Index: os << '[' << s.index << ']'; break;
          case PathStep::Kind::MapEntry: os << ".map[" << s.name << ']'; break;
          case PathStep::Kind::ShareWord: os << ".word[" << s.name << ']'; break;
          case PathStep::Kind::ClosureVar: os << ".env." << s.name; break;
        }
      }
    }
    os << " :";
    for (Wire x : g.wires) os << " w" << x;
    os << '\n';
  }
  for (const auto& p : c.parties) {
    os << "OUT " << p.name << " :";
    for (Wire x : c.output_wires(p)) os << " w" << x;
    os << '\n';
  }
  for (const auto& g : c.gates) {
    switch (g.op) {
      case Gate::Op::Xor: os << "XOR w" << g.out << " <- w" << g.a << " w" << g.b; break;
      case Gate::Op::And: os << "AND w" << g.out << " <- w" << g.a << " w" << g.b; break;
      case Gate::Op::Not: os << "NOT w" << g.out << " <- w" << g.a; break;
      case Gate::Op::Const: os << "CONST w" << g.out << " <- " << (g.bit ? 1 : 0); break;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace wysx
