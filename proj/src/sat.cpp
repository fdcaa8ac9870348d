#include "fsmforge/sat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fsmforge::sat {

namespace {

// Luby sequence scaled by powers of y: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
double luby(double y, std::uint64_t x)
{
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

constexpr double restart_base = 100.0;
constexpr double restart_growth = 2.0;

}  // namespace

Solver::Solver(std::int32_t num_vars)
{
  for (std::int32_t i = 0; i < num_vars; ++i) {
    new_var();
  }
}

std::int32_t Solver::new_var()
{
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(0);
  level_.push_back(0);
  reason_.push_back(no_reason);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_index_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return static_cast<std::int32_t>(v + 1);
}

Solver::CRef Solver::alloc_clause(std::span<const ILit> lits, bool learnt)
{
  const auto c = static_cast<CRef>(arena_.size());
  arena_.push_back((static_cast<ILit>(lits.size()) << 1) | (learnt ? 1U : 0U));
  arena_.insert(arena_.end(), lits.begin(), lits.end());
  return c;
}

void Solver::attach(CRef c)
{
  const ILit* lits = clause_lits(c);
  watches_[lits[0] ^ 1U].push_back(Watcher{c, lits[1]});
  watches_[lits[1] ^ 1U].push_back(Watcher{c, lits[0]});
}

void Solver::add_clause(std::span<const Lit> lits)
{
  for (Lit l : lits) {
    if (l == 0 || std::abs(l) > var_count()) {
      throw std::out_of_range("literal " + std::to_string(l) + " outside declared variables 1.."
                              + std::to_string(var_count()));
    }
  }
  if (!ok_) {
    return;
  }
  cancel_until(0);

  std::vector<ILit> ls;
  ls.reserve(lits.size());
  for (Lit l : lits) {
    ls.push_back(to_internal(l));
  }
  std::sort(ls.begin(), ls.end());
  std::vector<ILit> kept;
  kept.reserve(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i > 0 && ls[i] == ls[i - 1]) {
      continue;
    }
    if (i > 0 && ls[i] == (ls[i - 1] ^ 1U)) {
      return;  // tautology
    }
    const int val = value(ls[i]);
    if (val == 1) {
      return;  // satisfied at level 0
    }
    if (val == 0) {
      kept.push_back(ls[i]);
    }
  }

  if (kept.empty()) {
    ok_ = false;
  } else if (kept.size() == 1) {
    enqueue(kept[0], no_reason);
    ok_ = propagate() == no_reason;
  } else {
    attach(alloc_clause(kept, false));
  }
}

void Solver::enqueue(ILit l, CRef reason)
{
  const auto v = var_of(l);
  assigns_[v] = (l & 1U) ? -1 : 1;
  level_[v] = static_cast<std::uint32_t>(decision_level());
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate()
{
  CRef conflict = no_reason;
  while (qhead_ < trail_.size()) {
    const ILit p = trail_[qhead_++];
    const ILit false_lit = p ^ 1U;
    auto& ws = watches_[p];
    ++stats_.propagations;

    std::size_t i = 0;
    std::size_t j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const ILit blocker = ws[i].blocker;
      if (value(blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      const CRef cr = ws[i].cref;
      ILit* c = clause_lits(cr);
      const std::uint32_t size = clause_size(cr);
      if (c[0] == false_lit) {
        std::swap(c[0], c[1]);
      }
      ++i;

      const ILit first = c[0];
      const Watcher w{cr, first};
      if (first != blocker && value(first) == 1) {
        ws[j++] = w;
        continue;
      }

      bool moved = false;
      for (std::uint32_t k = 2; k < size; ++k) {
        if (value(c[k]) != -1) {
          c[1] = c[k];
          c[k] = false_lit;
          watches_[c[1] ^ 1U].push_back(w);
          moved = true;
          break;
        }
      }
      if (moved) {
        continue;
      }

      ws[j++] = w;
      if (value(first) == -1) {
        conflict = cr;
        qhead_ = trail_.size();
        while (i < end) {
          ws[j++] = ws[i++];
        }
      } else {
        enqueue(first, cr);
      }
    }
    ws.resize(j);
  }
  return conflict;
}

bool Solver::literal_redundant(ILit l) const
{
  const CRef r = reason_[var_of(l)];
  if (r == no_reason) {
    return false;
  }
  const ILit* c = arena_.data() + r + 1;
  const std::uint32_t size = arena_[r] >> 1;
  for (std::uint32_t k = 1; k < size; ++k) {
    const auto v = var_of(c[k]);
    if (!seen_[v] && level_[v] > 0) {
      return false;
    }
  }
  return true;
}

void Solver::analyze(CRef conflict, std::vector<ILit>& learnt, std::size_t& backtrack_level)
{
  learnt.clear();
  learnt.push_back(0);  // asserting literal goes here

  int path_count = 0;
  bool have_p = false;
  ILit p = 0;
  std::size_t index = trail_.size();
  CRef reason = conflict;

  do {
    const ILit* c = clause_lits(reason);
    const std::uint32_t size = clause_size(reason);
    for (std::uint32_t j = have_p ? 1 : 0; j < size; ++j) {
      const ILit q = c[j];
      const auto v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        bump(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level()) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
    }
    do {
      --index;
    } while (!seen_[var_of(trail_[index])]);
    p = trail_[index];
    have_p = true;
    reason = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = p ^ 1U;

  const std::vector<ILit> to_clear(learnt.begin() + 1, learnt.end());
  std::size_t kept = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (!literal_redundant(learnt[i])) {
      learnt[kept++] = learnt[i];
    }
  }
  learnt.resize(kept);
  for (ILit l : to_clear) {
    seen_[var_of(l)] = 0;
  }

  if (learnt.size() == 1) {
    backtrack_level = 0;
    return;
  }
  std::size_t max_i = 1;
  for (std::size_t i = 2; i < learnt.size(); ++i) {
    if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) {
      max_i = i;
    }
  }
  std::swap(learnt[1], learnt[max_i]);
  backtrack_level = level_[var_of(learnt[1])];
}

void Solver::cancel_until(std::size_t level)
{
  if (decision_level() <= level) {
    return;
  }
  const std::size_t stop = trail_lim_[level];
  for (std::size_t c = trail_.size(); c-- > stop;) {
    const auto v = var_of(trail_[c]);
    assigns_[v] = 0;
    reason_[v] = no_reason;
    if (heap_index_[v] < 0) {
      heap_insert(v);
    }
  }
  trail_.resize(stop);
  qhead_ = stop;
  trail_lim_.resize(level);
}

std::optional<std::uint32_t> Solver::pick_branch_var()
{
  while (!heap_.empty()) {
    const auto v = heap_pop();
    if (assigns_[v] == 0) {
      return v;
    }
  }
  return std::nullopt;
}

std::optional<Status> Solver::search(std::uint64_t conflict_limit, std::uint64_t& budget_left, bool budgeted)
{
  std::uint64_t conflicts_here = 0;
  std::vector<ILit> learnt;
  for (;;) {
    const CRef conflict = propagate();
    if (conflict != no_reason) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) {
        ok_ = false;
        return Status::Unsat;
      }
      if (budgeted) {
        if (budget_left == 0) {
          return Status::BudgetExhausted;
        }
        --budget_left;
      }
      std::size_t backtrack_level = 0;
      analyze(conflict, learnt, backtrack_level);
      cancel_until(backtrack_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], no_reason);
      } else {
        const CRef cr = alloc_clause(learnt, true);
        attach(cr);
        enqueue(learnt[0], cr);
        ++stats_.learnt_clauses;
      }
      decay();
      continue;
    }

    if (conflicts_here >= conflict_limit) {
      cancel_until(0);
      ++stats_.restarts;
      return std::nullopt;
    }
    const auto next = pick_branch_var();
    if (!next) {
      model_.assign(assigns_.size(), false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) {
        model_[v] = assigns_[v] == 1;
      }
      return Status::Sat;
    }
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(2 * *next + 1, no_reason);
  }
}

Status Solver::solve()
{
  ++stats_.solves;
  model_.clear();
  if (!ok_) {
    return Status::Unsat;
  }
  std::uint64_t budget_left = budget_.value_or(0);
  const bool budgeted = budget_.has_value();
  std::optional<Status> result;
  for (std::uint64_t restarts = 0; !result; ++restarts) {
    const auto limit = static_cast<std::uint64_t>(luby(restart_growth, restarts) * restart_base);
    result = search(limit, budget_left, budgeted);
  }
  cancel_until(0);
  return *result;
}

void Solver::bump(std::uint32_t var)
{
  activity_[var] += var_inc_;
  if (activity_[var] > 1e100) {
    for (auto& a : activity_) {
      a *= 1e-100;
    }
    var_inc_ *= 1e-100;
  }
  if (heap_index_[var] >= 0) {
    heap_up(static_cast<std::size_t>(heap_index_[var]));
  }
}

void Solver::heap_insert(std::uint32_t var)
{
  heap_index_[var] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(var);
  heap_up(heap_.size() - 1);
}

std::uint32_t Solver::heap_pop()
{
  const auto top = heap_.front();
  heap_.front() = heap_.back();
  heap_index_[heap_.front()] = 0;
  heap_.pop_back();
  heap_index_[top] = -1;
  if (!heap_.empty()) {
    heap_down(0);
  }
  return top;
}

void Solver::heap_up(std::size_t pos)
{
  const auto v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_before(v, heap_[parent])) {
      break;
    }
    heap_[pos] = heap_[parent];
    heap_index_[heap_[pos]] = static_cast<std::int64_t>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_index_[v] = static_cast<std::int64_t>(pos);
}

void Solver::heap_down(std::size_t pos)
{
  const auto v = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) {
      break;
    }
    if (child + 1 < heap_.size() && heap_before(heap_[child + 1], heap_[child])) {
      ++child;
    }
    if (!heap_before(heap_[child], v)) {
      break;
    }
    heap_[pos] = heap_[child];
    heap_index_[heap_[pos]] = static_cast<std::int64_t>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_index_[v] = static_cast<std::int64_t>(pos);
}

Solver make_solver(const CnfProblem& problem)
{
  Solver solver(problem.var_count());
  for (const auto& c : problem.clauses()) {
    solver.add_clause(c.lits());
  }
  return solver;
}

bool satisfies(const CnfProblem& problem, const std::vector<bool>& model)
{
  if (model.size() < static_cast<std::size_t>(problem.var_count())) {
    return false;
  }
  return std::all_of(problem.clauses().begin(), problem.clauses().end(), [&](const Clause& c) {
    return std::any_of(c.lits().begin(), c.lits().end(), [&](Lit l) {
      return model[static_cast<std::size_t>(std::abs(l) - 1)] == (l > 0);
    });
  });
}

}  // namespace fsmforge::sat
