#pragma once

#include "fsmforge/recut.hpp"
#include "fsmforge/topology.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fsmforge {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = std::int32_t;

/// Disjunction of literals with no repeated variable.
class Clause
{
public:
  /// Drops duplicate literals, keeping first-occurrence order. Throws
  /// std::invalid_argument for an empty clause, a zero literal or a
  /// complementary pair.
  explicit Clause(std::vector<Lit> lits);

  /// Like the constructor, but a tautology yields nullopt instead of
  /// throwing.
  [[nodiscard]] static std::optional<Clause> normalize(std::vector<Lit> lits);

  [[nodiscard]] std::span<const Lit> lits() const { return lits_; }
  [[nodiscard]] std::size_t size() const { return lits_.size(); }

  friend bool operator==(const Clause&, const Clause&) = default;

private:
  struct Trusted {};
  Clause(Trusted, std::vector<Lit> lits) : lits_(std::move(lits)) {}

  std::vector<Lit> lits_;
};

/// Variable numbering: net id n is variable n + 1. Auxiliary variables
/// for wide XOR/XNOR chains follow the net variables.
struct VarMap
{
  std::vector<Lit> net_to_var;
  /// State registers' output and input variables, in state-word order.
  std::vector<Lit> q_vars;
  std::vector<Lit> d_vars;

  [[nodiscard]] Lit var(NetId net) const { return net_to_var.at(net); }
};

/// Clauses over `var_count` variables; append-only.
class CnfProblem
{
public:
  CnfProblem() = default;
  explicit CnfProblem(std::int32_t var_count) : var_count_(var_count), names_(static_cast<std::size_t>(var_count)) {}

  [[nodiscard]] std::int32_t var_count() const { return var_count_; }
  [[nodiscard]] const std::vector<Clause>& clauses() const { return clauses_; }
  [[nodiscard]] const VarMap& varmap() const { return varmap_; }
  [[nodiscard]] const std::vector<std::string>& var_names() const { return names_; }

  std::int32_t new_var(std::string name = {});

  /// Normalizes and appends; tautologies are dropped. Returns whether a
  /// clause was added. Throws std::out_of_range for unknown variables.
  bool add_clause(std::vector<Lit> lits);

private:
  friend CnfProblem encode(const Cut& cut);

  std::int32_t var_count_ = 0;
  std::vector<Clause> clauses_;
  VarMap varmap_;
  std::vector<std::string> names_;  // index v-1, empty for unnamed
};

/// Consistency encoding of every gate of the cut, one variable per net.
/// Free inputs and Q nets are left unconstrained, so the models are exactly
/// the consistent signal assignments of the cut.
[[nodiscard]] CnfProblem encode(const Cut& cut);

/// One unit clause per bit: v for 1, -v for 0.
void set_equal(CnfProblem& problem, std::span<const Lit> vars, const StateWord& value);

/// One blocking clause excluding `value`: -v for set bits, v for clear bits.
/// Throws std::invalid_argument on an empty vector.
void set_not_equal(CnfProblem& problem, std::span<const Lit> vars, const StateWord& value);

/// DIMACS CNF with a comment block naming net variables and the Q/D lists.
void write_dimacs(std::ostream& out, const CnfProblem& problem);
[[nodiscard]] std::string to_dimacs(const CnfProblem& problem);

/// Reads `p cnf` files; comments are skipped. Throws Error on malformed
/// input.
[[nodiscard]] CnfProblem parse_dimacs(std::istream& in);

}  // namespace fsmforge
