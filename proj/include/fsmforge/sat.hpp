#pragma once

#include "fsmforge/cnf.hpp"

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace fsmforge::sat {

enum class Status : std::uint8_t
{
  Sat,
  Unsat,
  /// The conflict budget ran out before an answer was found.
  BudgetExhausted,
};

struct SolverStats
{
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnt_clauses = 0;
};

/// Incremental CDCL solver over DIMACS-style literals.
///
/// Two-watched-literal propagation, first-UIP learning with local clause
/// minimization, VSIDS decisions (ties go to the lowest variable), negative
/// default polarity and Luby restarts. There is no randomness, so the same
/// sequence of add_clause/solve calls always yields the same answers and
/// models. Clauses, learnt ones included, are never removed.
class Solver
{
public:
  explicit Solver(std::int32_t num_vars = 0);

  std::int32_t new_var();
  [[nodiscard]] std::int32_t var_count() const { return static_cast<std::int32_t>(assigns_.size()); }

  /// Throws std::out_of_range for literal 0 or an undeclared variable.
  /// Tautologies are accepted and ignored.
  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }

  [[nodiscard]] Status solve();

  /// Model of the last Sat answer, indexed by variable - 1.
  [[nodiscard]] const std::vector<bool>& model() const { return model_; }
  [[nodiscard]] bool model_value(std::int32_t var) const { return model_.at(static_cast<std::size_t>(var - 1)); }

  /// Maximum conflicts per solve() call; nullopt means unlimited.
  void set_conflict_budget(std::optional<std::uint64_t> budget) { budget_ = budget; }

  [[nodiscard]] const SolverStats& stats() const { return stats_; }

private:
  using ILit = std::uint32_t;  // 2 * var + sign, var 0-based, sign 1 = negated
  using CRef = std::uint32_t;
  static constexpr CRef no_reason = UINT32_MAX;

  struct Watcher
  {
    CRef cref;
    ILit blocker;
  };

  static ILit to_internal(Lit l) { return static_cast<ILit>(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0)); }
  static std::uint32_t var_of(ILit l) { return l >> 1; }

  // 1 true, -1 false, 0 unassigned
  [[nodiscard]] int value(ILit l) const
  {
    const int v = assigns_[var_of(l)];
    return (l & 1U) ? -v : v;
  }
  [[nodiscard]] std::size_t decision_level() const { return trail_lim_.size(); }

  [[nodiscard]] std::uint32_t clause_size(CRef c) const { return arena_[c] >> 1; }
  [[nodiscard]] ILit* clause_lits(CRef c) { return arena_.data() + c + 1; }

  CRef alloc_clause(std::span<const ILit> lits, bool learnt);
  void attach(CRef c);
  void enqueue(ILit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<ILit>& learnt, std::size_t& backtrack_level);
  [[nodiscard]] bool literal_redundant(ILit l) const;
  void cancel_until(std::size_t level);
  [[nodiscard]] std::optional<std::uint32_t> pick_branch_var();
  /// nullopt requests a restart.
  std::optional<Status> search(std::uint64_t conflict_limit, std::uint64_t& budget_left, bool budgeted);

  void bump(std::uint32_t var);
  void decay() { var_inc_ /= var_decay_; }

  // Binary max-heap over activity, ties to the lower variable index.
  [[nodiscard]] bool heap_before(std::uint32_t a, std::uint32_t b) const
  {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(std::uint32_t var);
  std::uint32_t heap_pop();
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);

  std::vector<ILit> arena_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<std::uint32_t> level_;
  std::vector<CRef> reason_;
  std::vector<ILit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double var_decay_ = 0.95;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int64_t> heap_index_;  // -1 when absent

  std::vector<std::uint8_t> seen_;
  bool ok_ = true;
  std::vector<bool> model_;
  std::optional<std::uint64_t> budget_;
  SolverStats stats_;
};

/// Loads every clause of `problem` into a fresh solver.
[[nodiscard]] Solver make_solver(const CnfProblem& problem);

/// Whether `model` (indexed by variable - 1) satisfies every clause.
[[nodiscard]] bool satisfies(const CnfProblem& problem, const std::vector<bool>& model);

}  // namespace fsmforge::sat
