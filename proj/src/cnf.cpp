#include "fsmforge/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace fsmforge {

namespace {

enum class Norm { Ok, Empty, ZeroLit, Tautology };

// Removes repeated literals in place (first occurrence wins) and reports
// whether the clause is well-formed.
Norm normalize_in_place(std::vector<Lit>& lits)
{
  if (lits.empty()) {
    return Norm::Empty;
  }
  std::vector<Lit> sorted(lits);
  std::sort(sorted.begin(), sorted.end(), [](Lit a, Lit b) {
    return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b);
  });
  if (sorted.front() == 0) {
    return Norm::ZeroLit;
  }
  bool has_dup = false;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == -sorted[i - 1]) {
      return Norm::Tautology;
    }
    has_dup |= sorted[i] == sorted[i - 1];
  }
  if (has_dup) {
    std::unordered_set<Lit> seen;
    std::vector<Lit> unique;
    unique.reserve(lits.size());
    for (Lit l : lits) {
      if (seen.insert(l).second) {
        unique.push_back(l);
      }
    }
    lits = std::move(unique);
  }
  return Norm::Ok;
}

}  // namespace

Clause::Clause(std::vector<Lit> lits)
{
  switch (normalize_in_place(lits)) {
  case Norm::Empty:
    throw std::invalid_argument("clause must not be empty");
  case Norm::ZeroLit:
    throw std::invalid_argument("clause contains literal 0");
  case Norm::Tautology:
    throw std::invalid_argument("clause contains a complementary literal pair");
  case Norm::Ok:
    break;
  }
  lits_ = std::move(lits);
}

std::optional<Clause> Clause::normalize(std::vector<Lit> lits)
{
  switch (normalize_in_place(lits)) {
  case Norm::Tautology:
    return std::nullopt;
  case Norm::Ok:
    return Clause(Trusted{}, std::move(lits));
  default:
    return Clause(std::move(lits));  // throws
  }
}

std::int32_t CnfProblem::new_var(std::string name)
{
  names_.push_back(std::move(name));
  return ++var_count_;
}

bool CnfProblem::add_clause(std::vector<Lit> lits)
{
  for (Lit l : lits) {
    if (l == 0 || std::abs(l) > var_count_) {
      throw std::out_of_range("literal " + std::to_string(l) + " outside 1.." + std::to_string(var_count_));
    }
  }
  auto clause = Clause::normalize(std::move(lits));
  if (!clause) {
    return false;
  }
  clauses_.push_back(std::move(*clause));
  return true;
}

namespace {

class GateEncoder
{
public:
  GateEncoder(CnfProblem& problem, const VarMap& vars) : problem_(problem), vars_(vars) {}

  void encode(const Gate& g)
  {
    const Lit o = vars_.var(g.output);
    std::vector<Lit> in;
    in.reserve(g.inputs.size());
    for (NetId n : g.inputs) {
      in.push_back(vars_.var(n));
    }
    switch (g.kind) {
    case GateKind::And:
      and_gate(o, in);
      break;
    case GateKind::Nand:
      and_gate(-o, in);
      break;
    case GateKind::Or:
      or_gate(o, in);
      break;
    case GateKind::Nor:
      or_gate(-o, in);
      break;
    case GateKind::Not:
      equiv(-o, in[0]);
      break;
    case GateKind::Buff:
      equiv(o, in[0]);
      break;
    case GateKind::Xor:
      xor_chain(o, in);
      break;
    case GateKind::Xnor:
      xor_chain(-o, in);
      break;
    case GateKind::Mux: {
      const Lit s = in[0];
      const Lit a = in[1];
      const Lit b = in[2];
      problem_.add_clause({s, -a, o});
      problem_.add_clause({s, a, -o});
      problem_.add_clause({-s, -b, o});
      problem_.add_clause({-s, b, -o});
      break;
    }
    case GateKind::Const0:
      problem_.add_clause({-o});
      break;
    case GateKind::Const1:
      problem_.add_clause({o});
      break;
    }
  }

private:
  // o <-> AND(in); o may be a negative literal (NAND).
  void and_gate(Lit o, const std::vector<Lit>& in)
  {
    std::vector<Lit> big{o};
    for (Lit a : in) {
      problem_.add_clause({-o, a});
      big.push_back(-a);
    }
    problem_.add_clause(std::move(big));
  }

  void or_gate(Lit o, const std::vector<Lit>& in)
  {
    std::vector<Lit> big{-o};
    for (Lit a : in) {
      problem_.add_clause({o, -a});
      big.push_back(a);
    }
    problem_.add_clause(std::move(big));
  }

  void equiv(Lit o, Lit a)
  {
    problem_.add_clause({-o, a});
    problem_.add_clause({o, -a});
  }

  // o <-> a XOR b
  void xor2(Lit o, Lit a, Lit b)
  {
    problem_.add_clause({-o, a, b});
    problem_.add_clause({-o, -a, -b});
    problem_.add_clause({o, -a, b});
    problem_.add_clause({o, a, -b});
  }

  void xor_chain(Lit o, const std::vector<Lit>& in)
  {
    Lit acc = in[0];
    for (std::size_t i = 1; i + 1 < in.size(); ++i) {
      const Lit t = problem_.new_var();
      xor2(t, acc, in[i]);
      acc = t;
    }
    xor2(o, acc, in.back());
  }

  CnfProblem& problem_;
  const VarMap& vars_;
};

}  // namespace

CnfProblem encode(const Cut& cut)
{
  const Netlist& nl = cut.netlist;
  CnfProblem problem;
  problem.varmap_.net_to_var.resize(nl.net_count());
  for (const auto& n : nl.nets()) {
    problem.varmap_.net_to_var[n.id] = problem.new_var(n.name);
  }
  for (auto r : cut.state_registers) {
    const auto& reg = nl.registers()[r];
    problem.varmap_.q_vars.push_back(problem.varmap_.var(reg.q));
    problem.varmap_.d_vars.push_back(problem.varmap_.var(reg.d));
  }
  GateEncoder encoder(problem, problem.varmap_);
  for (const auto& g : nl.gates()) {
    encoder.encode(g);
  }
  return problem;
}

void set_equal(CnfProblem& problem, std::span<const Lit> vars, const StateWord& value)
{
  if (vars.size() != value.width()) {
    throw std::invalid_argument("set_equal: " + std::to_string(vars.size()) + " variables but "
                                + std::to_string(value.width()) + " value bits");
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    problem.add_clause({value[i] ? vars[i] : -vars[i]});
  }
}

void set_not_equal(CnfProblem& problem, std::span<const Lit> vars, const StateWord& value)
{
  if (vars.size() != value.width()) {
    throw std::invalid_argument("set_not_equal: " + std::to_string(vars.size()) + " variables but "
                                + std::to_string(value.width()) + " value bits");
  }
  if (vars.empty()) {
    throw std::invalid_argument("set_not_equal: cannot exclude a zero-width value");
  }
  std::vector<Lit> lits;
  lits.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    lits.push_back(value[i] ? -vars[i] : vars[i]);
  }
  problem.add_clause(std::move(lits));
}

void write_dimacs(std::ostream& out, const CnfProblem& problem)
{
  const auto& names = problem.var_names();
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (!names[v].empty()) {
      out << "c var " << (v + 1) << ' ' << names[v] << '\n';
    }
  }
  const auto& vm = problem.varmap();
  if (!vm.q_vars.empty()) {
    out << "c q";
    for (Lit v : vm.q_vars) {
      out << ' ' << v;
    }
    out << "\nc d";
    for (Lit v : vm.d_vars) {
      out << ' ' << v;
    }
    out << '\n';
  }
  out << "p cnf " << problem.var_count() << ' ' << problem.clauses().size() << '\n';
  for (const auto& c : problem.clauses()) {
    for (Lit l : c.lits()) {
      out << l << ' ';
    }
    out << "0\n";
  }
}

std::string to_dimacs(const CnfProblem& problem)
{
  std::ostringstream out;
  write_dimacs(out, problem);
  return out.str();
}

CnfProblem parse_dimacs(std::istream& in)
{
  std::string line;
  long long declared_vars = -1;
  long long declared_clauses = -1;
  CnfProblem problem;
  std::vector<Lit> pending;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') {
      continue;
    }
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" || declared_vars < 0
          || declared_clauses < 0) {
        throw Error("line " + std::to_string(line_no) + ": malformed DIMACS header");
      }
      problem = CnfProblem(static_cast<std::int32_t>(declared_vars));
      continue;
    }
    if (declared_vars < 0) {
      throw Error("line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    }
    std::istringstream all(line);
    long long lit = 0;
    while (all >> lit) {
      if (lit == 0) {
        if (pending.empty()) {
          throw Error("line " + std::to_string(line_no) + ": empty clause");
        }
        problem.add_clause(std::move(pending));
        pending.clear();
      } else {
        if (std::llabs(lit) > declared_vars) {
          throw Error("line " + std::to_string(line_no) + ": literal " + std::to_string(lit)
                      + " out of range");
        }
        pending.push_back(static_cast<Lit>(lit));
      }
    }
    if (!all.eof()) {
      throw Error("line " + std::to_string(line_no) + ": unexpected token");
    }
  }
  if (declared_vars < 0) {
    throw Error("missing 'p cnf' header");
  }
  if (!pending.empty()) {
    problem.add_clause(std::move(pending));
  }
  return problem;
}

}  // namespace fsmforge
