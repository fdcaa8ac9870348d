#include "fsmforge/ternary.hpp"

#include <stdexcept>

namespace fsmforge {

namespace {

// AND over inputs: any 0 -> 0, else any X -> X, else 1.
Ternary and_all(const Gate& g, std::span<const Ternary> v)
{
  bool saw_x = false;
  for (NetId in : g.inputs) {
    const Ternary t = v[in];
    if (t == Ternary::Zero) {
      return Ternary::Zero;
    }
    saw_x |= t == Ternary::X;
  }
  return saw_x ? Ternary::X : Ternary::One;
}

Ternary or_all(const Gate& g, std::span<const Ternary> v)
{
  bool saw_x = false;
  for (NetId in : g.inputs) {
    const Ternary t = v[in];
    if (t == Ternary::One) {
      return Ternary::One;
    }
    saw_x |= t == Ternary::X;
  }
  return saw_x ? Ternary::X : Ternary::Zero;
}

Ternary xor_all(const Gate& g, std::span<const Ternary> v)
{
  bool parity = false;
  for (NetId in : g.inputs) {
    const Ternary t = v[in];
    if (t == Ternary::X) {
      return Ternary::X;
    }
    parity ^= t == Ternary::One;
  }
  return to_ternary(parity);
}

}  // namespace

char to_char(Ternary v)
{
  switch (v) {
  case Ternary::Zero:
    return '0';
  case Ternary::One:
    return '1';
  default:
    return 'X';
  }
}

Ternary eval_gate(const Gate& g, std::span<const Ternary> v)
{
  switch (g.kind) {
  case GateKind::And:
    return and_all(g, v);
  case GateKind::Nand:
    return !and_all(g, v);
  case GateKind::Or:
    return or_all(g, v);
  case GateKind::Nor:
    return !or_all(g, v);
  case GateKind::Not:
    return !v[g.inputs[0]];
  case GateKind::Buff:
    return v[g.inputs[0]];
  case GateKind::Xor:
    return xor_all(g, v);
  case GateKind::Xnor:
    return !xor_all(g, v);
  case GateKind::Mux: {
    const Ternary sel = v[g.inputs[0]];
    const Ternary a = v[g.inputs[1]];
    const Ternary b = v[g.inputs[2]];
    if (sel == Ternary::Zero) {
      return a;
    }
    if (sel == Ternary::One) {
      return b;
    }
    return a == b ? a : Ternary::X;
  }
  case GateKind::Const0:
    return Ternary::Zero;
  case GateKind::Const1:
    return Ternary::One;
  }
  return Ternary::X;
}

void propagate(const Netlist& netlist, std::span<const std::size_t> gates, std::span<Ternary> values)
{
  const auto all = netlist.gates();
  for (std::size_t gi : gates) {
    const Gate& g = all[gi];
    values[g.output] = eval_gate(g, values);
  }
}

std::vector<Ternary> simulate_ternary(const Netlist& netlist, std::span<const Ternary> assignment)
{
  if (assignment.size() != netlist.net_count()) {
    throw std::invalid_argument("simulate_ternary: assignment size does not match net count");
  }
  std::vector<Ternary> values(netlist.net_count(), Ternary::X);
  for (NetId in : netlist.primary_inputs()) {
    values[in] = assignment[in];
  }
  for (const auto& r : netlist.registers()) {
    values[r.q] = assignment[r.q];
  }
  propagate(netlist, netlist.topo_order(), values);
  return values;
}

std::vector<bool> simulate_binary(const Netlist& netlist, const std::vector<bool>& assignment)
{
  if (assignment.size() != netlist.net_count()) {
    throw std::invalid_argument("simulate_binary: assignment size does not match net count");
  }
  std::vector<bool> v(netlist.net_count(), false);
  for (NetId in : netlist.primary_inputs()) {
    v[in] = assignment[in];
  }
  for (const auto& r : netlist.registers()) {
    v[r.q] = assignment[r.q];
  }
  const auto gates = netlist.gates();
  for (std::size_t gi : netlist.topo_order()) {
    const Gate& g = gates[gi];
    bool out = false;
    switch (g.kind) {
    case GateKind::And:
    case GateKind::Nand:
      out = true;
      for (NetId in : g.inputs) {
        out = out && v[in];
      }
      out = (g.kind == GateKind::Nand) ? !out : out;
      break;
    case GateKind::Or:
    case GateKind::Nor:
      for (NetId in : g.inputs) {
        out = out || v[in];
      }
      out = (g.kind == GateKind::Nor) ? !out : out;
      break;
    case GateKind::Xor:
    case GateKind::Xnor:
      for (NetId in : g.inputs) {
        out = out != v[in];
      }
      out = (g.kind == GateKind::Xnor) ? !out : out;
      break;
    case GateKind::Not:
      out = !v[g.inputs[0]];
      break;
    case GateKind::Buff:
      out = v[g.inputs[0]];
      break;
    case GateKind::Mux:
      out = v[g.inputs[0]] ? v[g.inputs[2]] : v[g.inputs[1]];
      break;
    case GateKind::Const0:
      out = false;
      break;
    case GateKind::Const1:
      out = true;
      break;
    }
    v[g.output] = out;
  }
  return v;
}

}  // namespace fsmforge
