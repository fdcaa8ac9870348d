#include "fsmforge/enumsat.hpp"

#include "fsmforge/sat.hpp"

#include <stdexcept>

namespace fsmforge {

NextStates next_states(const CnfProblem& base, const StateWord& current, const SatEnumOptions& options)
{
  const auto& q = base.varmap().q_vars;
  const auto& d = base.varmap().d_vars;
  if (current.width() != q.size()) {
    throw std::invalid_argument("state '" + current.str() + "' has width " + std::to_string(current.width())
                                + ", expected " + std::to_string(q.size()));
  }

  // The encoded logic is shared; only the state constraints and blocking
  // clauses are specific to this call.
  CnfProblem added(base.var_count());
  set_equal(added, q, current);
  auto solver = sat::make_solver(base);
  for (const auto& c : added.clauses()) {
    solver.add_clause(c.lits());
  }
  solver.set_conflict_budget(options.conflict_budget);

  NextStates out;
  for (;;) {
    ++out.solve_calls;
    const auto status = solver.solve();
    if (status == sat::Status::Unsat) {
      break;
    }
    if (status == sat::Status::BudgetExhausted) {
      out.complete = false;
      break;
    }
    if (options.check_models && !(sat::satisfies(base, solver.model()) && sat::satisfies(added, solver.model()))) {
      throw std::logic_error("solver returned a model that violates the problem");
    }
    StateWord next(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      next.set(i, solver.model_value(d[i]));
    }
    const auto before = added.clauses().size();
    set_not_equal(added, d, next);
    if (added.clauses().size() == before) {
      // Only possible if two D bits alias the same variable with opposite
      // values, which no model can produce.
      throw std::logic_error("blocking clause for '" + next.str() + "' was a tautology");
    }
    solver.add_clause(added.clauses().back().lits());
    out.states.push_back(std::move(next));
  }
  return out;
}

NextStates next_states(const Cut& cut, const StateWord& current, const SatEnumOptions& options)
{
  return next_states(encode(cut), current, options);
}

TransitionGraph enumerate_topology(const Cut& cut, const FsmSpec& spec, const SatEnumOptions& options)
{
  if (spec.reset.width() != cut.width()) {
    throw SpecError("reset state '" + spec.reset.str() + "' does not match " + std::to_string(cut.width())
                    + " state register(s)");
  }
  const CnfProblem base = encode(cut);
  return explore<int>(
    spec.reset,
    options,
    [&](const StateWord& s) {
      auto found = next_states(base, s, options);
      detail::Step<int> step;
      step.next = std::move(found.states);
      step.solve_calls = found.solve_calls;
      step.complete = found.complete;
      return step;
    },
    [](const Transition&, int) {});
}

}  // namespace fsmforge
