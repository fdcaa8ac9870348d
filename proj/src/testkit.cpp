#include "fsmforge/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace fsmforge::testkit {

namespace {

std::uint32_t width_for(std::uint32_t n_states)
{
  std::uint32_t w = 1;
  while ((std::uint64_t{1} << w) < n_states) {
    ++w;
  }
  return w;
}

StateWord code_word(std::uint64_t code, std::size_t width)
{
  StateWord s(width);
  for (std::size_t i = 0; i < width; ++i) {
    s.set(i, ((code >> (width - 1 - i)) & 1U) != 0);
  }
  return s;
}

}  // namespace

std::set<std::uint32_t> FsmTruth::successors(std::uint32_t state) const
{
  const auto& row = transition.at(state);
  return {row.begin(), row.end()};
}

FsmTruth generate(std::uint64_t seed, std::uint32_t n_states, std::uint32_t n_inputs, double density)
{
  if (n_states < 1 || n_states > 64) {
    throw std::invalid_argument("n_states must be in 1..64");
  }
  if (n_inputs > 6) {
    throw std::invalid_argument("n_inputs must be at most 6");
  }
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("density must be in [0, 1]");
  }
  SplitMix64 rng(seed);
  FsmTruth truth;
  truth.seed = seed;
  truth.n_states = n_states;
  truth.n_inputs = n_inputs;
  const std::uint32_t n_words = 1U << n_inputs;
  const std::uint32_t width = width_for(n_states);

  std::vector<std::uint64_t> codes(std::size_t{1} << width);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    codes[i] = i;
  }
  rng.shuffle(codes);
  for (std::uint32_t s = 0; s < n_states; ++s) {
    truth.encoding.push_back(code_word(codes[s], width));
  }

  // Random spanning tree from state 0, respecting the out-degree limit of
  // one successor per input word.
  std::vector<std::set<std::uint32_t>> succ(n_states);
  std::vector<std::uint32_t> order;
  for (std::uint32_t s = 1; s < n_states; ++s) {
    order.push_back(s);
  }
  rng.shuffle(order);
  std::vector<std::uint32_t> placed{0};
  for (std::uint32_t v : order) {
    std::vector<std::uint32_t> open;
    for (std::uint32_t p : placed) {
      if (succ[p].size() < n_words) {
        open.push_back(p);
      }
    }
    const auto parent = open[rng.below(open.size())];
    succ[parent].insert(v);
    placed.push_back(v);
  }

  const std::uint32_t max_succ = std::min(n_states, n_words);
  const auto target = static_cast<std::uint32_t>(
    std::max<long>(1, std::lround(density * static_cast<double>(max_succ))));
  truth.transition.resize(n_states);
  for (std::uint32_t s = 0; s < n_states; ++s) {
    while (succ[s].size() < std::min(target, max_succ)) {
      succ[s].insert(static_cast<std::uint32_t>(rng.below(n_states)));
    }
    const std::vector<std::uint32_t> targets(succ[s].begin(), succ[s].end());
    std::vector<std::uint32_t> words(n_words);
    for (std::uint32_t w = 0; w < n_words; ++w) {
      words[w] = w;
    }
    rng.shuffle(words);
    auto& row = truth.transition[s];
    row.assign(n_words, 0);
    for (std::uint32_t k = 0; k < n_words; ++k) {
      row[words[k]] = k < targets.size() ? targets[k] : targets[rng.below(targets.size())];
    }
  }
  return truth;
}

FsmTruth generate_random(std::uint64_t seed)
{
  SplitMix64 params(seed ^ 0x5eedf5a5eedf5a5eULL);
  const auto n_states = static_cast<std::uint32_t>(2 + params.below(63));
  const auto n_inputs = static_cast<std::uint32_t>(params.below(7));
  const double density = 0.1 + 0.9 * params.unit();
  return generate(seed, n_states, n_inputs, density);
}

TransitionGraph truth_topology(const FsmTruth& truth)
{
  TransitionGraph g;
  g.reset = truth.encoding.at(0);
  std::vector<bool> seen(truth.n_states, false);
  std::deque<std::uint32_t> work{0};
  seen[0] = true;
  while (!work.empty()) {
    const auto s = work.front();
    work.pop_front();
    g.states.insert(truth.encoding[s]);
    for (auto n : truth.successors(s)) {
      g.edges.emplace(truth.encoding[s], truth.encoding[n]);
      if (!seen[n]) {
        seen[n] = true;
        work.push_back(n);
      }
    }
  }
  return g;
}

namespace {

/// Lazily created literals over named source nets.
class Literals
{
public:
  explicit Literals(NetlistBuilder& b) : b_(b) {}

  NetId get(const std::string& name, bool positive)
  {
    const NetId n = b_.net(name);
    if (positive) {
      return n;
    }
    auto it = neg_.find(n);
    if (it != neg_.end()) {
      return it->second;
    }
    const NetId inv = b_.net(name + "_n");
    b_.add_gate(GateKind::Not, inv, {n});
    neg_.emplace(n, inv);
    return inv;
  }

private:
  NetlistBuilder& b_;
  std::map<NetId, NetId> neg_;
};

}  // namespace

Design synthesize(const FsmTruth& truth)
{
  const std::size_t width = truth.width();
  const std::uint32_t n_words = 1U << truth.n_inputs;
  NetlistBuilder b;
  for (std::uint32_t j = 0; j < truth.n_inputs; ++j) {
    b.add_input("in" + std::to_string(j));
  }
  Literals lit(b);

  std::vector<std::vector<NetId>> terms(width);
  for (std::uint32_t s = 0; s < truth.n_states; ++s) {
    const StateWord& cur = truth.encoding[s];
    for (std::uint32_t w = 0; w < n_words; ++w) {
      const StateWord& nxt = truth.encoding[truth.transition[s][w]];
      bool any = false;
      for (std::size_t i = 0; i < width; ++i) {
        any = any || nxt[i];
      }
      if (!any) {
        continue;
      }
      std::vector<NetId> literals;
      for (std::size_t i = 0; i < width; ++i) {
        literals.push_back(lit.get("s" + std::to_string(i), cur[i]));
      }
      for (std::uint32_t j = 0; j < truth.n_inputs; ++j) {
        const bool bit = ((w >> (truth.n_inputs - 1 - j)) & 1U) != 0;
        literals.push_back(lit.get("in" + std::to_string(j), bit));
      }
      NetId minterm = literals.front();
      if (literals.size() > 1) {
        minterm = b.net("m" + std::to_string(s) + "_" + std::to_string(w));
        b.add_gate(GateKind::And, minterm, std::move(literals));
      }
      for (std::size_t i = 0; i < width; ++i) {
        if (nxt[i]) {
          terms[i].push_back(minterm);
        }
      }
    }
  }

  Design out;
  for (std::size_t i = 0; i < width; ++i) {
    const NetId q = b.net("s" + std::to_string(i));
    NetId d = 0;
    if (terms[i].empty()) {
      d = b.net("d" + std::to_string(i));
      b.add_gate(GateKind::Const0, d, {});
    } else if (terms[i].size() == 1) {
      d = terms[i].front();
    } else {
      d = b.net("d" + std::to_string(i));
      b.add_gate(GateKind::Or, d, std::move(terms[i]));
    }
    b.add_register(q, d);
    b.add_output("s" + std::to_string(i));
    out.spec.state_registers.push_back("s" + std::to_string(i));
  }
  out.spec.reset = truth.encoding.at(0);
  out.netlist = b.build();
  return out;
}

Netlist pad_with_noise(const Netlist& netlist, std::size_t n_extra_gates, std::size_t n_extra_regs, std::uint64_t seed)
{
  NetlistBuilder b;
  for (const auto& n : netlist.nets()) {
    b.net(n.name);
  }
  for (NetId id : netlist.primary_inputs()) {
    b.add_input(netlist.net(id).name);
  }
  for (const auto& r : netlist.registers()) {
    b.add_register(r.q, r.d);
  }
  for (const auto& g : netlist.gates()) {
    b.add_gate(g.kind, g.output, g.inputs);
  }
  for (NetId id : netlist.primary_outputs()) {
    b.add_output(netlist.net(id).name);
  }
  if (n_extra_gates == 0 && n_extra_regs == 0) {
    return b.build();
  }

  SplitMix64 rng(seed);
  const auto fresh = [&](std::string name) {
    while (netlist.find_net(name)) {
      name += '_';
    }
    return name;
  };

  // Noise reads from anything, including FSM nets, but only noise nets are
  // ever written, so no original register gains a new fan-in.
  std::vector<NetId> pool;
  pool.reserve(netlist.net_count() + n_extra_gates + n_extra_regs + 8);
  for (NetId id = 0; id < netlist.net_count(); ++id) {
    pool.push_back(id);
  }
  std::vector<NetId> noise_sources;
  for (std::size_t k = 0; k < 8; ++k) {
    const auto name = fresh("nz_in" + std::to_string(k));
    b.add_input(name);
    pool.push_back(b.net(name));
    noise_sources.push_back(pool.back());
  }
  std::vector<NetId> reg_q;
  for (std::size_t k = 0; k < n_extra_regs; ++k) {
    reg_q.push_back(b.net(fresh("nz_r" + std::to_string(k))));
    pool.push_back(reg_q.back());
  }

  static constexpr GateKind kinds[] = {
    GateKind::And, GateKind::Nand, GateKind::Or,  GateKind::Nor, GateKind::Xor,
    GateKind::Xnor, GateKind::Not, GateKind::Buff, GateKind::Mux,
  };
  std::vector<NetId> gate_outs;
  gate_outs.reserve(n_extra_gates);
  for (std::size_t k = 0; k < n_extra_gates; ++k) {
    const GateKind kind = kinds[rng.below(std::size(kinds))];
    std::size_t arity = 2 + rng.below(3);
    if (kind == GateKind::Not || kind == GateKind::Buff) {
      arity = 1;
    } else if (kind == GateKind::Mux) {
      arity = 3;
    }
    std::vector<NetId> ins;
    ins.reserve(arity);
    for (std::size_t a = 0; a < arity; ++a) {
      ins.push_back(pool[rng.below(pool.size())]);
    }
    const NetId out = b.net(fresh("nz_g" + std::to_string(k)));
    b.add_gate(kind, out, std::move(ins));
    pool.push_back(out);
    gate_outs.push_back(out);
  }
  for (NetId q : reg_q) {
    const auto& from = gate_outs.empty() ? noise_sources : gate_outs;
    b.add_register(q, from[rng.below(from.size())]);
  }
  const std::size_t n_out = std::min<std::size_t>(16, gate_outs.size());
  for (std::size_t k = gate_outs.size() - n_out; k < gate_outs.size(); ++k) {
    b.add_output(fresh("nz_g" + std::to_string(k)));
  }
  return b.build();
}

Design xor_fsm(std::uint64_t seed, std::uint32_t width, std::uint32_t n_inputs)
{
  if (width == 0 || 2 * width > n_inputs) {
    throw std::invalid_argument("xor_fsm needs 1 <= width and 2*width <= n_inputs");
  }
  SplitMix64 rng(seed);
  std::vector<std::uint32_t> perm(n_inputs);
  for (std::uint32_t j = 0; j < n_inputs; ++j) {
    perm[j] = j;
  }
  rng.shuffle(perm);

  NetlistBuilder b;
  for (std::uint32_t j = 0; j < n_inputs; ++j) {
    b.add_input("x" + std::to_string(j));
  }
  Design out;
  for (std::uint32_t i = 0; i < width; ++i) {
    std::vector<NetId> ins;
    for (std::uint32_t j = 0; j < n_inputs; ++j) {
      if (j != perm[2 * i] && j != perm[2 * i + 1]) {
        ins.push_back(b.net("x" + std::to_string(j)));
      }
    }
    ins.push_back(b.net("q" + std::to_string((i + 1) % width)));
    const NetId d = b.net("d" + std::to_string(i));
    b.add_gate(GateKind::Xor, d, std::move(ins));
    b.add_register(b.net("q" + std::to_string(i)), d);
    b.add_output("q" + std::to_string(i));
    out.spec.state_registers.push_back("q" + std::to_string(i));
  }
  out.spec.reset = StateWord(width);
  out.netlist = b.build();
  return out;
}

Design counter(std::uint32_t width)
{
  if (width == 0) {
    throw std::invalid_argument("counter width must be positive");
  }
  NetlistBuilder b;
  Design out;
  const auto q = [&](std::uint32_t i) { return b.net("q" + std::to_string(i)); };
  // Bit 0 is the most significant, so the carry into bit i is the AND of
  // bits i+1..width-1.
  for (std::uint32_t i = 0; i < width; ++i) {
    const NetId d = b.net("d" + std::to_string(i));
    if (i == width - 1) {
      b.add_gate(GateKind::Not, d, {q(i)});
    } else {
      NetId carry = q(width - 1);
      if (width - 1 - i > 1) {
        carry = b.net("c" + std::to_string(i));
        std::vector<NetId> ins;
        for (std::uint32_t k = i + 1; k < width; ++k) {
          ins.push_back(q(k));
        }
        b.add_gate(GateKind::And, carry, std::move(ins));
      }
      b.add_gate(GateKind::Xor, d, {q(i), carry});
    }
    b.add_register(q(i), d);
    b.add_output("q" + std::to_string(i));
    out.spec.state_registers.push_back("q" + std::to_string(i));
  }
  out.spec.reset = StateWord(width);
  out.netlist = b.build();
  return out;
}

nlohmann::json to_json(const FsmTruth& truth)
{
  using nlohmann::json;
  json encoding = json::array();
  for (const auto& e : truth.encoding) {
    encoding.push_back(e.str());
  }
  return json{
    {"seed", truth.seed},
    {"n_states", truth.n_states},
    {"n_inputs", truth.n_inputs},
    {"width", truth.width()},
    {"reset", truth.encoding.at(0).str()},
    {"encoding", encoding},
    {"transition", truth.transition},
  };
}

}  // namespace fsmforge::testkit
