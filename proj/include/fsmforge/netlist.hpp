#pragma once

#include "fsmforge/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fsmforge {

using NetId = std::uint32_t;

enum class GateKind : std::uint8_t
{
  And,
  Nand,
  Or,
  Nor,
  Not,
  Buff,
  Xor,
  Xnor,
  Mux,
  Const0,
  Const1,
};

/// Upper-case mnemonic as used in `.bench` files ("AND", "BUFF", ...).
[[nodiscard]] std::string_view to_string(GateKind kind);

/// Case-insensitive lookup; accepts "BUF" as an alias of BUFF.
[[nodiscard]] std::optional<GateKind> parse_gate_kind(std::string_view text);

[[nodiscard]] bool arity_ok(GateKind kind, std::size_t n_inputs);

struct Net
{
  NetId id = 0;
  std::string name;
};

/// MUX inputs are ordered (select, in0, in1).
struct Gate
{
  GateKind kind = GateKind::Buff;
  std::vector<NetId> inputs;
  NetId output = 0;
};

/// D flip-flop with an implicit global clock; named after its output net.
struct Register
{
  NetId d = 0;
  NetId q = 0;
  std::string name;
};

struct Driver
{
  enum class Kind : std::uint8_t { None, Input, Gate, Register };
  Kind kind = Kind::None;
  std::size_t index = 0;  // gate or register index
};

/// Immutable, validated gate-level netlist. Built with NetlistBuilder.
///
/// Every non-input net has exactly one driver and the gate graph, with
/// registers broken at their outputs, is acyclic. Net ids are dense and
/// assigned in first-appearance order.
class Netlist
{
public:
  Netlist() = default;

  [[nodiscard]] std::span<const Net> nets() const { return nets_; }
  [[nodiscard]] const Net& net(NetId id) const { return nets_.at(id); }
  [[nodiscard]] std::size_t net_count() const { return nets_.size(); }
  [[nodiscard]] std::optional<NetId> find_net(std::string_view name) const;

  [[nodiscard]] std::span<const Gate> gates() const { return gates_; }
  [[nodiscard]] std::span<const Register> registers() const { return registers_; }
  [[nodiscard]] std::optional<std::size_t> find_register(std::string_view name) const;

  /// Ascending net id.
  [[nodiscard]] std::span<const NetId> primary_inputs() const { return inputs_; }
  /// Declaration order.
  [[nodiscard]] std::span<const NetId> primary_outputs() const { return outputs_; }

  [[nodiscard]] Driver driver(NetId id) const { return drivers_.at(id); }
  [[nodiscard]] bool is_primary_input(NetId id) const
  {
    return drivers_.at(id).kind == Driver::Kind::Input;
  }
  [[nodiscard]] bool is_register_output(NetId id) const
  {
    return drivers_.at(id).kind == Driver::Kind::Register;
  }

  /// Gate indices such that every gate follows the gates driving its
  /// inputs. Ties are broken by ascending output net id.
  [[nodiscard]] std::span<const std::size_t> topo_order() const { return topo_; }

  /// Gate indices reading each net.
  [[nodiscard]] std::span<const std::size_t> fanout(NetId id) const;

private:
  friend class NetlistBuilder;

  std::vector<Net> nets_;
  std::unordered_map<std::string, NetId> by_name_;
  std::vector<Gate> gates_;
  std::vector<Register> registers_;
  std::unordered_map<std::string, std::size_t> register_by_name_;
  std::vector<NetId> inputs_;
  std::vector<NetId> outputs_;
  std::vector<Driver> drivers_;
  std::vector<std::size_t> topo_;
  std::vector<std::size_t> fanout_offsets_;
  std::vector<std::size_t> fanout_gates_;
};

/// Incremental construction of a Netlist. Forward references are allowed;
/// undefined nets and cycles are reported by build().
class NetlistBuilder
{
public:
  /// Interns a net name, assigning the next id on first sight.
  NetId net(std::string_view name, SourceLoc loc = {});

  void add_input(std::string_view name, SourceLoc loc = {});
  void add_output(std::string_view name, SourceLoc loc = {});
  void add_gate(GateKind kind,
                std::string_view output,
                std::span<const std::string> inputs,
                SourceLoc loc = {});
  void add_gate(GateKind kind, NetId output, std::vector<NetId> inputs, SourceLoc loc = {});
  void add_register(std::string_view q, std::string_view d, SourceLoc loc = {});
  void add_register(NetId q, NetId d, SourceLoc loc = {});

  [[nodiscard]] std::size_t net_count() const { return nl_.nets_.size(); }

  /// Validates and returns the netlist; the builder is left empty.
  [[nodiscard]] Netlist build();

private:
  void claim_driver(NetId id, Driver drv, SourceLoc loc);

  Netlist nl_;
  std::vector<SourceLoc> first_seen_;
  std::vector<SourceLoc> gate_locs_;
  std::vector<std::pair<NetId, SourceLoc>> output_refs_;
};

/// Free-function form of Netlist::topo_order.
[[nodiscard]] std::vector<std::size_t> topo_order(const Netlist& netlist);

}  // namespace fsmforge
