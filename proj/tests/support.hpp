// Shared fixtures and independent oracles for the unit and acceptance tests.
// Oracles here only use two-valued simulation and exhaustive loops; they
// never touch the SAT solver, the CNF encoder or the ternary engine.
#pragma once

#include "fsmforge/bench.hpp"
#include "fsmforge/cnf.hpp"
#include "fsmforge/netlist.hpp"
#include "fsmforge/recut.hpp"
#include "fsmforge/ternary.hpp"
#include "fsmforge/testkit.hpp"
#include "fsmforge/topology.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fsmforge::test {

inline constexpr const char* two_reg_bench = R"(# two-register FSM
INPUT(I0)
OUTPUT(U2)
OUTPUT(U4)
U2 = DFF(U1)
U4 = DFF(U3)
U1 = AND(I0, U4)
U5 = NOT(I0)
U3 = AND(U2, U5)
)";

// U5 no longer tied to I0.
inline constexpr const char* two_reg_free_u5_bench = R"(INPUT(I0)
INPUT(U5)
OUTPUT(U2)
OUTPUT(U4)
U2 = DFF(U1)
U4 = DFF(U3)
U1 = AND(I0, U4)
U3 = AND(U2, U5)
)";

inline FsmSpec two_reg_spec()
{
  return FsmSpec{{"U2", "U4"}, StateWord::parse("11")};
}

inline std::set<StateWord> words(std::initializer_list<const char*> list)
{
  std::set<StateWord> out;
  for (const char* s : list) {
    out.insert(StateWord::parse(s));
  }
  return out;
}

/// Successors of `current` by simulating every assignment of the cut's
/// free inputs. Exponential; for small cuts only.
inline std::set<StateWord> oracle_successors(const Cut& cut, const StateWord& current)
{
  const Netlist& nl = cut.netlist;
  const auto q = cut.q_nets();
  const auto d = cut.d_nets();
  const auto& free = cut.free_inputs;
  std::set<StateWord> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << free.size()); ++w) {
    std::vector<bool> assign(nl.net_count(), false);
    for (std::size_t i = 0; i < q.size(); ++i) {
      assign[q[i]] = current[i];
    }
    for (std::size_t i = 0; i < free.size(); ++i) {
      assign[free[i]] = ((w >> i) & 1U) != 0;
    }
    const auto values = simulate_binary(nl, assign);
    StateWord next(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      next.set(i, values[d[i]]);
    }
    out.insert(next);
  }
  return out;
}

inline TransitionGraph oracle_topology(const Cut& cut, const StateWord& reset)
{
  TransitionGraph g;
  g.reset = reset;
  g.states.insert(reset);
  std::deque<StateWord> work{reset};
  while (!work.empty()) {
    const StateWord s = work.front();
    work.pop_front();
    for (const auto& n : oracle_successors(cut, s)) {
      g.edges.emplace(s, n);
      if (g.states.insert(n).second) {
        work.push_back(n);
      }
    }
  }
  return g;
}

/// Direct transcription of the generator's transition table.
inline TransitionGraph oracle_truth(const testkit::FsmTruth& truth)
{
  TransitionGraph g;
  g.reset = truth.encoding[0];
  std::set<std::uint32_t> seen{0};
  std::deque<std::uint32_t> work{0};
  while (!work.empty()) {
    const auto s = work.front();
    work.pop_front();
    g.states.insert(truth.encoding[s]);
    for (auto n : truth.transition[s]) {
      g.edges.emplace(truth.encoding[s], truth.encoding[n]);
      if (seen.insert(n).second) {
        work.push_back(n);
      }
    }
  }
  return g;
}

/// Whether an assignment (bit v-1 for variable v) satisfies every clause.
inline bool clauses_hold(const std::vector<std::vector<Lit>>& clauses, std::uint64_t assign)
{
  for (const auto& c : clauses) {
    bool sat = false;
    for (Lit l : c) {
      const bool v = ((assign >> (std::abs(l) - 1)) & 1U) != 0;
      if ((l > 0) == v) {
        sat = true;
        break;
      }
    }
    if (!sat) {
      return false;
    }
  }
  return true;
}

inline std::vector<std::vector<Lit>> clause_lists(const CnfProblem& p)
{
  std::vector<std::vector<Lit>> out;
  for (const auto& c : p.clauses()) {
    out.emplace_back(c.lits().begin(), c.lits().end());
  }
  return out;
}

// Name-level structure, independent of net ids.
struct Shape
{
  std::set<std::string> inputs;
  std::set<std::string> outputs;
  std::set<std::pair<std::string, std::string>> regs;
  std::set<std::pair<std::string, std::string>> gates;  // output -> "KIND(a,b)"

  bool operator==(const Shape&) const = default;
};

inline Shape shape(const Netlist& nl)
{
  Shape s;
  for (NetId n : nl.primary_inputs()) {
    s.inputs.insert(nl.net(n).name);
  }
  for (NetId n : nl.primary_outputs()) {
    s.outputs.insert(nl.net(n).name);
  }
  for (const auto& r : nl.registers()) {
    s.regs.emplace(nl.net(r.q).name, nl.net(r.d).name);
  }
  for (const auto& g : nl.gates()) {
    std::string desc(to_string(g.kind));
    desc += '(';
    for (std::size_t i = 0; i < g.inputs.size(); ++i) {
      desc += (i ? "," : "") + nl.net(g.inputs[i]).name;
    }
    desc += ')';
    s.gates.emplace(nl.net(g.output).name, desc);
  }
  return s;
}

/// Random acyclic netlist with registers: every gate reads earlier nets,
/// register D inputs come from anywhere. Names: i*, r*, g*.
inline Netlist random_netlist(std::uint64_t seed, std::size_t n_inputs, std::size_t n_regs, std::size_t n_gates)
{
  testkit::SplitMix64 rng(seed);
  NetlistBuilder b;
  std::vector<NetId> avail;
  for (std::size_t i = 0; i < n_inputs; ++i) {
    const auto name = "i" + std::to_string(i);
    b.add_input(name);
    avail.push_back(b.net(name));
  }
  std::vector<NetId> qs;
  for (std::size_t i = 0; i < n_regs; ++i) {
    qs.push_back(b.net("r" + std::to_string(i)));
    avail.push_back(qs.back());
  }
  static constexpr GateKind kinds[] = {GateKind::And, GateKind::Nand, GateKind::Or,   GateKind::Nor,
                                       GateKind::Not, GateKind::Buff, GateKind::Xor,  GateKind::Xnor,
                                       GateKind::Mux, GateKind::Const0, GateKind::Const1};
  for (std::size_t g = 0; g < n_gates; ++g) {
    // constants are rare so cones stay interesting
    GateKind kind = kinds[rng.below(9)];
    if (rng.below(40) == 0) {
      kind = rng.below(2) == 0 ? GateKind::Const0 : GateKind::Const1;
    }
    if (avail.empty()) {
      kind = GateKind::Const0;
    }
    std::size_t arity = 0;
    switch (kind) {
      case GateKind::Not:
      case GateKind::Buff: arity = 1; break;
      case GateKind::Mux: arity = 3; break;
      case GateKind::Const0:
      case GateKind::Const1: arity = 0; break;
      default: arity = 2 + rng.below(3); break;
    }
    std::vector<NetId> ins;
    for (std::size_t k = 0; k < arity; ++k) {
      ins.push_back(avail[rng.below(avail.size())]);
    }
    const NetId out = b.net("g" + std::to_string(g));
    b.add_gate(kind, out, std::move(ins));
    avail.push_back(out);
  }
  for (std::size_t i = 0; i < n_regs; ++i) {
    b.add_register(qs[i], avail[rng.below(avail.size())]);
  }
  if (n_gates > 0) {
    b.add_output("g" + std::to_string(n_gates - 1));
  }
  return b.build();
}

}  // namespace fsmforge::test
