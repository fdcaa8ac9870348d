#include "fsmforge/refsmlite.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <stdexcept>

namespace fsmforge {

std::string format_cube(const ConditionCube& cube, const Netlist& netlist)
{
  if (cube.assignments.empty()) {
    return "-";
  }
  std::string out;
  for (const auto& [net, bit] : cube.assignments) {
    if (!out.empty()) {
      out += ' ';
    }
    out += netlist.net(net).name;
    out += bit ? "=1" : "=0";
  }
  return out;
}

ConditionEnumerator::ConditionEnumerator(const Cut& cut, const RefsmOptions& options)
  : cut_(&cut), q_(cut.q_nets()), d_(cut.d_nets())
{
  const Netlist& nl = cut.netlist;
  std::vector<bool> is_free(nl.net_count(), false);
  for (NetId n : cut.free_inputs) {
    is_free[n] = true;
  }

  std::vector<bool> seen(nl.net_count(), false);
  std::vector<bool> gate_used(nl.gates().size(), false);
  std::deque<NetId> work(d_.begin(), d_.end());
  while (!work.empty()) {
    const NetId n = work.front();
    work.pop_front();
    if (seen[n]) {
      continue;
    }
    seen[n] = true;
    if (is_free[n]) {
      candidates_.push_back(n);
      continue;
    }
    const Driver drv = nl.driver(n);
    if (drv.kind == Driver::Kind::Gate) {
      gate_used[drv.index] = true;
      for (NetId in : nl.gates()[drv.index].inputs) {
        work.push_back(in);
      }
    }
  }
  std::sort(candidates_.begin(), candidates_.end());
  if (candidates_.size() > options.max_inputs) {
    throw GuardError("state logic depends on " + std::to_string(candidates_.size())
                     + " free inputs, above the limit of " + std::to_string(options.max_inputs));
  }
  for (std::size_t gi : nl.topo_order()) {
    if (gate_used[gi]) {
      cone_.push_back(gi);
    }
  }
}

ConditionMap ConditionEnumerator::enumerate(const StateWord& current) const
{
  if (current.width() != q_.size()) {
    throw std::invalid_argument("state '" + current.str() + "' has width " + std::to_string(current.width())
                                + ", expected " + std::to_string(q_.size()));
  }
  std::vector<Ternary> values(cut_->netlist.net_count(), Ternary::X);
  for (std::size_t i = 0; i < q_.size(); ++i) {
    values[q_[i]] = to_ternary(current[i]);
  }
  std::vector<std::pair<NetId, bool>> assigned;
  ConditionMap out;
  recurse(0, values, assigned, out);
  return out;
}

void ConditionEnumerator::recurse(std::size_t depth,
                                  std::vector<Ternary>& values,
                                  std::vector<std::pair<NetId, bool>>& assigned,
                                  ConditionMap& out) const
{
  propagate(cut_->netlist, cone_, values);
  bool determined = true;
  for (NetId d : d_) {
    determined = determined && values[d] != Ternary::X;
  }
  if (determined) {
    StateWord next(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) {
      next.set(i, values[d_[i]] == Ternary::One);
    }
    out[next].push_back(ConditionCube{assigned});
    return;
  }
  if (depth == candidates_.size()) {
    throw std::logic_error("next state still unknown with every support input assigned");
  }
  const NetId input = candidates_[depth];
  for (bool bit : {false, true}) {
    values[input] = to_ternary(bit);
    assigned.emplace_back(input, bit);
    recurse(depth + 1, values, assigned, out);
    assigned.pop_back();
  }
  values[input] = Ternary::X;
}

ConditionMap enumerate_conditions(const Cut& cut, const StateWord& current, const RefsmOptions& options)
{
  return ConditionEnumerator(cut, options).enumerate(current);
}

double ConditionedGraph::acpt() const
{
  if (base.edges.empty()) {
    return 0.0;
  }
  return static_cast<double>(cube_count) / static_cast<double>(base.edges.size());
}

ConditionedGraph enumerate_with_conditions(const Cut& cut, const FsmSpec& spec, const RefsmOptions& options)
{
  if (spec.reset.width() != cut.width()) {
    throw SpecError("reset state '" + spec.reset.str() + "' does not match " + std::to_string(cut.width())
                    + " state register(s)");
  }
  const ConditionEnumerator enumerator(cut, options);
  ConditionedGraph out;
  using Cubes = std::vector<ConditionCube>;
  out.base = explore<Cubes>(
    spec.reset,
    options,
    [&](const StateWord& s) {
      auto conditions = enumerator.enumerate(s);
      detail::Step<Cubes> step;
      for (auto& [next, cubes] : conditions) {
        step.next.push_back(next);
        step.payload.push_back(std::move(cubes));
      }
      return step;
    },
    [&](const Transition& edge, Cubes cubes) {
      out.cube_count += cubes.size();
      out.conditions.emplace(edge, std::move(cubes));
    });
  return out;
}

nlohmann::json to_json(const ConditionedGraph& graph, const Netlist& netlist)
{
  using nlohmann::json;
  json doc = to_json(graph.base);
  json conditions = json::array();
  for (const auto& edge : graph.base.edges) {
    json cubes = json::array();
    auto it = graph.conditions.find(edge);
    if (it != graph.conditions.end()) {
      for (const auto& cube : it->second) {
        json c = json::object();
        for (const auto& [net, bit] : cube.assignments) {
          c[netlist.net(net).name] = bit ? 1 : 0;
        }
        cubes.push_back(std::move(c));
      }
    }
    conditions.push_back(std::move(cubes));
  }
  doc["conditions"] = std::move(conditions);
  doc["cubes"] = graph.cube_count;
  doc["acpt"] = graph.acpt();
  return doc;
}

std::string stats_csv_header()
{
  return "netlist,states,edges,cubes,acpt";
}

std::string stats_csv_row(const std::string& netlist_name, const ConditionedGraph& graph)
{
  char acpt[64];
  std::snprintf(acpt, sizeof acpt, "%.2f", graph.acpt());
  return netlist_name + "," + std::to_string(graph.base.states.size()) + ","
         + std::to_string(graph.base.edges.size()) + "," + std::to_string(graph.cube_count) + "," + acpt;
}

}  // namespace fsmforge
