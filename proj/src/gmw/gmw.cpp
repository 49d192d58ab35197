#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "wysx/error.hpp"
#include "wysx/gmw.hpp"
#include "wysx/shares.hpp"
#include "wysx/slice.hpp"

namespace wysx {

namespace {

/// Unbounded FIFO between one ordered pair of parties. Each message carries
/// the round it belongs to so out-of-order delivery is detected.
class Channel {
public:
  void send(std::uint64_t round, std::vector<bool> bits) {
    {
      std::lock_guard lock(mu_);
      queue_.emplace_back(round, std::move(bits));
    }
    cv_.notify_one();
  }

  std::vector<bool> recv(std::uint64_t round) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return closed_ || !queue_.empty(); });
    if (queue_.empty()) throw Error(Errc::ChannelClosed, "peer aborted");
    auto [tag, bits] = std::move(queue_.front());
    queue_.pop_front();
    if (tag != round) throw Error(Errc::ChannelClosed, "message from round " + std::to_string(tag) + " in round " + std::to_string(round));
    return bits;
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::pair<std::uint64_t, std::vector<bool>>> queue_;
  bool closed_ = false;
};

struct Network {
  explicit Network(std::size_t n) : n(n), links(n * n) {
    for (auto& l : links) l = std::make_unique<Channel>();
  }
  Channel& link(std::size_t from, std::size_t to) { return *links[from * n + to]; }
  void close_all() {
    for (auto& l : links) l->close();
  }

  std::size_t n;
  std::vector<std::unique_ptr<Channel>> links;
};

/// Gates grouped by multiplicative depth: the ANDs of a layer run in one
/// communication round, then the local gates of the same depth.
struct Schedule {
  std::vector<std::vector<std::size_t>> ands;   // per depth, indices into gates
  std::vector<std::vector<std::size_t>> local;  // per depth
  std::vector<std::size_t> and_index;           // gate index -> triple index
};

Schedule schedule(const Circuit& c) {
  std::vector<std::size_t> depth(c.num_wires, 0);
  Schedule s;
  s.and_index.assign(c.gates.size(), 0);
  std::size_t next_and = 0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    std::size_t d = 0;
    switch (g.op) {
      case Gate::Op::Const: break;
      case Gate::Op::Not: d = depth[g.a]; break;
      case Gate::Op::Xor: d = std::max(depth[g.a], depth[g.b]); break;
      case Gate::Op::And: d = std::max(depth[g.a], depth[g.b]) + 1; break;
    }
    depth[g.out] = d;
    if (s.ands.size() <= d) {
      s.ands.resize(d + 1);
      s.local.resize(d + 1);
    }
    if (g.op == Gate::Op::And) {
      s.ands[d].push_back(i);
      s.and_index[i] = next_and++;
    } else {
      s.local[d].push_back(i);
    }
  }
  return s;
}

struct PartyState {
  std::vector<bool> received;
  std::vector<bool> outputs;
  std::size_t bits_sent = 0;
};

void run_party(std::size_t me, const Circuit& c, const std::vector<Principal>& parties,
               const std::vector<bool>& my_inputs, const std::vector<TripleShare>& triples,
               const Schedule& sched, std::uint64_t input_seed, Network& net, PartyState& st) {
  const std::size_t n = parties.size();
  std::vector<bool> share(c.num_wires, false);
  std::uint64_t round = 0;

  auto send = [&](std::size_t to, std::vector<bool> bits) {
    st.bits_sent += bits.size();
    net.link(me, to).send(round, std::move(bits));
  };
  auto recv = [&](std::size_t from) {
    auto bits = net.link(from, me).recv(round);
    st.received.insert(st.received.end(), bits.begin(), bits.end());
    return bits;
  };

  // Input sharing: the owner splits each bit and sends one share to every peer.
  std::mt19937_64 rng(mix64(input_seed ^ mix64(me + 1)));
  std::vector<std::vector<bool>> outgoing(n);
  std::size_t pos = 0;
  for (const auto& g : c.inputs) {
    if (g.owner != parties[me]) continue;
    for (Wire w : g.wires) {
      if (pos >= my_inputs.size()) throw Error(Errc::MissingInput, parties[me].name + " supplied too few input bits");
      auto sh = share_bit(my_inputs[pos++], n, rng);
      // Rotate so the owner keeps the share that absorbs the secret.
      for (std::size_t j = 0; j < n; ++j) {
        bool bit = sh[(j + n - me) % n];
        if (j == me) {
          share[w] = bit;
        } else {
          outgoing[j].push_back(bit);
        }
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j != me) send(j, std::move(outgoing[j]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j == me) continue;
    auto bits = recv(j);
    std::size_t k = 0;
    for (const auto& g : c.inputs) {
      if (g.owner != parties[j]) continue;
      for (Wire w : g.wires) {
        if (k >= bits.size()) throw Error(Errc::MissingInput, parties[j].name + " sent too few input shares");
        share[w] = bits[k++];
      }
    }
  }

  auto eval_local = [&](std::size_t gi) {
    const Gate& g = c.gates[gi];
    switch (g.op) {
      case Gate::Op::Const: share[g.out] = me == 0 && g.bit; break;
      case Gate::Op::Not: share[g.out] = me == 0 ? !share[g.a] : share[g.a]; break;
      case Gate::Op::Xor: share[g.out] = share[g.a] != share[g.b]; break;
      case Gate::Op::And: break;
    }
  };

  for (std::size_t d = 0; d < sched.ands.size(); ++d) {
    const auto& layer = sched.ands[d];
    if (!layer.empty()) {
      ++round;
      // Broadcast d_i = x_i ^ a_i and e_i = y_i ^ b_i for every AND of the layer.
      std::vector<bool> mine;
      for (std::size_t gi : layer) {
        const Gate& g = c.gates[gi];
        const TripleShare& t = triples[sched.and_index[gi]];
        mine.push_back(share[g.a] != t.a);
        mine.push_back(share[g.b] != t.b);
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (j != me) send(j, mine);
      }
      std::vector<bool> opened = mine;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == me) continue;
        auto bits = recv(j);
        if (bits.size() != opened.size()) throw Error(Errc::ChannelClosed, "malformed AND-layer message");
        for (std::size_t k = 0; k < bits.size(); ++k) opened[k] = opened[k] != bits[k];
      }
      for (std::size_t k = 0; k < layer.size(); ++k) {
        const Gate& g = c.gates[layer[k]];
        const TripleShare& t = triples[sched.and_index[layer[k]]];
        bool dd = opened[2 * k], ee = opened[2 * k + 1];
        bool z = (t.c != (dd && t.b)) != (ee && t.a);
        if (me == 0) z = z != (dd && ee);
        share[g.out] = z;
      }
    }
    for (std::size_t gi : sched.local[d]) eval_local(gi);
  }

  // Output reconstruction: every party sends its shares of q's outputs to q only.
  ++round;
  for (std::size_t q = 0; q < n; ++q) {
    if (q == me) continue;
    std::vector<bool> bits;
    for (Wire w : c.output_wires(parties[q])) bits.push_back(share[w]);
    send(q, std::move(bits));
  }
  auto own = c.output_wires(parties[me]);
  for (Wire w : own) st.outputs.push_back(share[w]);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == me) continue;
    auto bits = recv(j);
    if (bits.size() != own.size()) throw Error(Errc::ChannelClosed, "malformed output message");
    for (std::size_t k = 0; k < bits.size(); ++k) st.outputs[k] = st.outputs[k] != bits[k];
  }
}

}  // namespace

std::vector<std::vector<TripleShare>> deal_triples(std::size_t n, std::size_t and_gates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<TripleShare>> out(n, std::vector<TripleShare>(and_gates));
  for (std::size_t g = 0; g < and_gates; ++g) {
    bool a = (rng() & 1U) != 0;
    bool b = (rng() & 1U) != 0;
    auto sa = share_bit(a, n, rng);
    auto sb = share_bit(b, n, rng);
    auto sc = share_bit(a && b, n, rng);
    for (std::size_t i = 0; i < n; ++i) out[i][g] = TripleShare{sa[i], sb[i], sc[i]};
  }
  return out;
}

GmwResult gmw_eval(const Circuit& c, const std::map<Principal, std::vector<bool>>& inputs,
                   std::uint64_t dealer_seed, std::uint64_t input_seed) {
  std::vector<Principal> parties(c.parties.begin(), c.parties.end());
  const std::size_t n = parties.size();
  if (n == 0) throw Error(Errc::MissingInput, "circuit has no parties");
  Schedule sched = schedule(c);
  auto triples = deal_triples(n, c.and_count(), dealer_seed);

  std::vector<std::vector<bool>> party_inputs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto it = inputs.find(parties[i]); it != inputs.end()) party_inputs[i] = it->second;
  }

  Network net(n);
  std::vector<PartyState> states(n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> workers;
  workers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    workers.emplace_back([&, i] {
      try {
        run_party(i, c, parties, party_inputs[i], triples[i], sched, input_seed, net, states[i]);
      } catch (...) {
        errors[i] = std::current_exception();
        net.close_all();
      }
    });
  }
  for (auto& t : workers) t.join();

  // Report the root cause rather than a peer's ChannelClosed.
  std::exception_ptr first;
  for (const auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const Error& err) {
      if (err.code() != Errc::ChannelClosed) std::rethrow_exception(e);
      if (!first) first = e;
    } catch (...) {
      std::rethrow_exception(e);
    }
  }
  if (first) std::rethrow_exception(first);

  GmwResult r;
  r.and_rounds = 0;
  for (const auto& layer : sched.ands) r.and_rounds += layer.empty() ? 0 : 1;
  for (std::size_t i = 0; i < n; ++i) {
    r.outputs.emplace(parties[i], std::move(states[i].outputs));
    r.transcripts.emplace(parties[i], std::move(states[i].received));
    r.bits_sent += states[i].bits_sent;
  }
  return r;
}

std::map<Principal, Value> gmw_run_block(const Config& sec, const GmwOptions& opts) {
  Circuit c = compile_block(sec, opts.width);
  const ShareContext* shares = sec.shares ? &*sec.shares : nullptr;
  std::map<Principal, std::vector<bool>> inputs;
  for (const auto& p : c.parties) inputs.emplace(p, bind_inputs(c, p, slice_env(p, sec.env), shares));
  GmwResult r = gmw_eval(c, inputs, opts.dealer_seed, mix64(opts.dealer_seed + 0x9e3779b97f4a7c15ULL));
  std::map<Principal, Value> out;
  for (const auto& p : c.parties) out.emplace(p, decode_output(c, p, r.outputs.at(p)));
  return out;
}

}  // namespace wysx
