#pragma once

#include "fsmforge/cnf.hpp"
#include "fsmforge/recut.hpp"
#include "fsmforge/topology.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fsmforge {

struct SatEnumOptions : EnumOptions
{
  /// Per-solve conflict cap; nullopt is unlimited.
  std::optional<std::uint64_t> conflict_budget;
  /// Re-check every model against the clause list (soundness audit).
  bool check_models = false;
};

struct NextStates
{
  /// In the order the solver produced them.
  std::vector<StateWord> states;
  std::uint64_t solve_calls = 0;
  /// False if the conflict budget ran out; `states` is then partial.
  bool complete = true;
};

/// All successors of `current`: fix Q to `current`, then solve repeatedly,
/// reading the next state from the D variables of each model and blocking
/// it, until the problem becomes unsatisfiable.
///
/// `base` must be encode(cut). It is not modified; each call loads it into
/// a fresh solver.
[[nodiscard]] NextStates next_states(const CnfProblem& base,
                                     const StateWord& current,
                                     const SatEnumOptions& options = {});

/// Convenience overload that encodes the cut first.
[[nodiscard]] NextStates next_states(const Cut& cut, const StateWord& current, const SatEnumOptions& options = {});

/// BFS over states from spec.reset, calling next_states once per state.
/// solve_calls equals |edges| + |states| for complete runs.
[[nodiscard]] TransitionGraph enumerate_topology(const Cut& cut,
                                                 const FsmSpec& spec,
                                                 const SatEnumOptions& options = {});

}  // namespace fsmforge
