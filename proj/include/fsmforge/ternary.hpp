#pragma once

#include "fsmforge/netlist.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fsmforge {

enum class Ternary : std::uint8_t
{
  Zero,
  One,
  X,
};

[[nodiscard]] constexpr Ternary to_ternary(bool b) { return b ? Ternary::One : Ternary::Zero; }

[[nodiscard]] constexpr Ternary operator!(Ternary v)
{
  return v == Ternary::X ? Ternary::X : (v == Ternary::One ? Ternary::Zero : Ternary::One);
}

[[nodiscard]] char to_char(Ternary v);

/// Evaluates one gate over values indexed by net id. Controlling values
/// dominate X: AND with a 0 input is 0, OR with a 1 input is 1, and a MUX
/// with an X select resolves when both data inputs agree.
[[nodiscard]] Ternary eval_gate(const Gate& gate, std::span<const Ternary> values);

/// Runs the given gates (already in topological order) in place.
void propagate(const Netlist& netlist, std::span<const std::size_t> gates, std::span<Ternary> values);

/// Full-netlist three-valued simulation. `assignment` is indexed by net id;
/// only primary-input and register-output entries are read.
[[nodiscard]] std::vector<Ternary> simulate_ternary(const Netlist& netlist,
                                                    std::span<const Ternary> assignment);

/// Plain two-valued evaluation, same indexing convention.
[[nodiscard]] std::vector<bool> simulate_binary(const Netlist& netlist, const std::vector<bool>& assignment);

}  // namespace fsmforge
