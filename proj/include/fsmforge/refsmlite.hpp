#pragma once

#include "fsmforge/recut.hpp"
#include "fsmforge/ternary.hpp"
#include "fsmforge/topology.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fsmforge {

/// Partial assignment of free inputs; inputs not listed are don't-cares.
struct ConditionCube
{
  /// Ascending net id.
  std::vector<std::pair<NetId, bool>> assignments;

  friend bool operator==(const ConditionCube&, const ConditionCube&) = default;
};

/// "I0=0 I3=1", or "-" for the empty cube.
[[nodiscard]] std::string format_cube(const ConditionCube& cube, const Netlist& netlist);

struct RefsmOptions : EnumOptions
{
  /// Refuse cuts whose state logic depends on more free inputs than this.
  std::size_t max_inputs = 24;
};

using ConditionMap = std::map<StateWord, std::vector<ConditionCube>>;

/// Condition enumeration for one cut. Branching candidates are the free
/// inputs in the structural support of the state registers' D nets, in
/// ascending net id; simulation is restricted to their fan-in cone.
class ConditionEnumerator
{
public:
  /// Throws GuardError if the support exceeds options.max_inputs.
  ConditionEnumerator(const Cut& cut, const RefsmOptions& options = {});

  /// Depth-first: simulate with unassigned inputs at X; once every D value
  /// is known, emit the assigned inputs as a cube for that next state,
  /// otherwise branch on the next candidate, 0 before 1. The cubes of one
  /// state partition the input space.
  [[nodiscard]] ConditionMap enumerate(const StateWord& current) const;

  [[nodiscard]] std::span<const NetId> candidates() const { return candidates_; }

private:
  void recurse(std::size_t depth,
               std::vector<Ternary>& values,
               std::vector<std::pair<NetId, bool>>& assigned,
               ConditionMap& out) const;

  const Cut* cut_;
  std::vector<NetId> q_;
  std::vector<NetId> d_;
  std::vector<NetId> candidates_;
  std::vector<std::size_t> cone_;
};

[[nodiscard]] ConditionMap enumerate_conditions(const Cut& cut,
                                                const StateWord& current,
                                                const RefsmOptions& options = {});

/// Topology plus the condition cubes of every transition.
struct ConditionedGraph
{
  TransitionGraph base;
  std::map<Transition, std::vector<ConditionCube>> conditions;
  std::uint64_t cube_count = 0;

  /// Average conditions per transition: cube_count / |edges|.
  [[nodiscard]] double acpt() const;
};

[[nodiscard]] ConditionedGraph enumerate_with_conditions(const Cut& cut,
                                                         const FsmSpec& spec,
                                                         const RefsmOptions& options = {});

/// The TransitionGraph JSON plus "conditions" (one cube list per edge, in
/// edge order, each cube an object of input name -> 0/1), "cubes" and
/// "acpt".
[[nodiscard]] nlohmann::json to_json(const ConditionedGraph& graph, const Netlist& netlist);

/// Header and row for "netlist,states,edges,cubes,acpt".
[[nodiscard]] std::string stats_csv_header();
[[nodiscard]] std::string stats_csv_row(const std::string& netlist_name, const ConditionedGraph& graph);

}  // namespace fsmforge
