#pragma once

#include "fsmforge/netlist.hpp"
#include "fsmforge/topology.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fsmforge {

/// The analyst-supplied state word: which registers hold the FSM state and
/// the value they take under reset. Register i maps to bit i of StateWord.
struct FsmSpec
{
  std::vector<std::string> state_registers;
  StateWord reset;

  /// Register indices in `netlist`, in state-word order. Throws SpecError
  /// on unknown or repeated names, an empty list, or a reset width mismatch.
  [[nodiscard]] std::vector<std::size_t> resolve(const Netlist& netlist) const;
};

/// Parses a comma-separated register list ("U2,U4").
[[nodiscard]] std::vector<std::string> split_register_list(std::string_view text);

/// A netlist prepared for topology enumeration: the state registers are
/// kept as registers and every other source of values is a free input.
struct Cut
{
  Netlist netlist;
  /// Ascending net id. Primary inputs plus outputs of non-state registers.
  std::vector<NetId> free_inputs;
  /// Indices into netlist.registers(), in state-word order.
  std::vector<std::size_t> state_registers;
  /// Number of nets pulled from the BFS worklist (0 for whole_netlist).
  std::size_t visited = 0;

  [[nodiscard]] std::size_t width() const { return state_registers.size(); }
  [[nodiscard]] std::vector<NetId> q_nets() const;
  [[nodiscard]] std::vector<NetId> d_nets() const;
};

/// Union of the state registers' fan-in cones, found by BFS from their D
/// nets and stopped at primary inputs and register outputs. Non-state
/// registers met on the way become primary inputs named after their Q net;
/// the state registers' Q nets become the primary outputs. Net names and
/// relative net order are preserved.
[[nodiscard]] Cut fsm_cut(const Netlist& netlist, const FsmSpec& spec);

/// The unreduced netlist viewed the same way (non-state register outputs
/// unconstrained), for running the engines without RECUT.
[[nodiscard]] Cut whole_netlist(const Netlist& netlist, const FsmSpec& spec);

struct CutStats
{
  std::size_t inputs = 0;
  std::size_t regs = 0;
  std::size_t gates = 0;

  friend bool operator==(const CutStats&, const CutStats&) = default;
};

[[nodiscard]] CutStats cut_stats(const Cut& cut);

/// "inputs=1 regs=2 gates=3"
[[nodiscard]] std::string format_stats(const CutStats& stats);

}  // namespace fsmforge
