#include "fsmforge/recut.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace fsmforge {

std::vector<std::size_t> FsmSpec::resolve(const Netlist& netlist) const
{
  if (state_registers.empty()) {
    throw SpecError("state word must name at least one register");
  }
  if (reset.width() != state_registers.size()) {
    throw SpecError("reset state '" + reset.str() + "' has " + std::to_string(reset.width())
                    + " bit(s) but the state word has " + std::to_string(state_registers.size())
                    + " register(s)");
  }
  std::vector<std::size_t> out;
  out.reserve(state_registers.size());
  std::unordered_set<std::string_view> seen;
  for (const auto& name : state_registers) {
    const auto idx = netlist.find_register(name);
    if (!idx) {
      throw SpecError("unknown state register '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw SpecError("state register '" + name + "' listed twice");
    }
    out.push_back(*idx);
  }
  return out;
}

std::vector<std::string> split_register_list(std::string_view text)
{
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = text.size();
    }
    auto item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') {
      item.remove_prefix(1);
    }
    while (!item.empty() && item.back() == ' ') {
      item.remove_suffix(1);
    }
    if (!item.empty()) {
      out.emplace_back(item);
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<NetId> Cut::q_nets() const
{
  std::vector<NetId> out;
  out.reserve(state_registers.size());
  for (auto r : state_registers) {
    out.push_back(netlist.registers()[r].q);
  }
  return out;
}

std::vector<NetId> Cut::d_nets() const
{
  std::vector<NetId> out;
  out.reserve(state_registers.size());
  for (auto r : state_registers) {
    out.push_back(netlist.registers()[r].d);
  }
  return out;
}

Cut fsm_cut(const Netlist& netlist, const FsmSpec& spec)
{
  const auto state_regs = spec.resolve(netlist);
  const auto regs = netlist.registers();
  const auto gates = netlist.gates();

  std::vector<bool> is_state_q(netlist.net_count(), false);
  for (auto r : state_regs) {
    is_state_q[regs[r].q] = true;
  }

  std::vector<bool> in_cut(netlist.net_count(), false);
  std::vector<bool> gate_in_cut(gates.size(), false);
  std::vector<bool> free_input(netlist.net_count(), false);
  std::deque<NetId> work;
  for (auto r : state_regs) {
    work.push_back(regs[r].d);
  }

  std::size_t visited = 0;
  while (!work.empty()) {
    const NetId cur = work.front();
    work.pop_front();
    if (in_cut[cur]) {
      continue;
    }
    in_cut[cur] = true;
    ++visited;
    const Driver drv = netlist.driver(cur);
    switch (drv.kind) {
    case Driver::Kind::Input:
      free_input[cur] = true;
      break;
    case Driver::Kind::Register:
      free_input[cur] = !is_state_q[cur];
      break;
    case Driver::Kind::Gate:
      gate_in_cut[drv.index] = true;
      for (NetId in : gates[drv.index].inputs) {
        if (!in_cut[in]) {
          work.push_back(in);
        }
      }
      break;
    case Driver::Kind::None:
      break;
    }
  }
  for (auto r : state_regs) {
    in_cut[regs[r].q] = true;
  }

  NetlistBuilder builder;
  std::vector<NetId> remap(netlist.net_count(), 0);
  for (NetId id = 0; id < netlist.net_count(); ++id) {
    if (in_cut[id]) {
      remap[id] = builder.net(netlist.net(id).name);
    }
  }
  for (NetId id = 0; id < netlist.net_count(); ++id) {
    if (free_input[id]) {
      builder.add_input(netlist.net(id).name);
    }
  }
  for (auto r : state_regs) {
    builder.add_register(remap[regs[r].q], remap[regs[r].d]);
  }
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    if (!gate_in_cut[gi]) {
      continue;
    }
    std::vector<NetId> ins;
    ins.reserve(gates[gi].inputs.size());
    for (NetId in : gates[gi].inputs) {
      ins.push_back(remap[in]);
    }
    builder.add_gate(gates[gi].kind, remap[gates[gi].output], std::move(ins));
  }
  for (auto r : state_regs) {
    builder.add_output(netlist.net(regs[r].q).name);
  }

  Cut cut;
  cut.netlist = builder.build();
  cut.free_inputs.assign(cut.netlist.primary_inputs().begin(), cut.netlist.primary_inputs().end());
  cut.state_registers.resize(state_regs.size());
  for (std::size_t i = 0; i < state_regs.size(); ++i) {
    cut.state_registers[i] = i;
  }
  cut.visited = visited;
  return cut;
}

Cut whole_netlist(const Netlist& netlist, const FsmSpec& spec)
{
  Cut view;
  view.state_registers = spec.resolve(netlist);
  view.netlist = netlist;
  std::vector<bool> is_state(netlist.registers().size(), false);
  for (auto r : view.state_registers) {
    is_state[r] = true;
  }
  view.free_inputs.assign(netlist.primary_inputs().begin(), netlist.primary_inputs().end());
  for (std::size_t r = 0; r < netlist.registers().size(); ++r) {
    if (!is_state[r]) {
      view.free_inputs.push_back(netlist.registers()[r].q);
    }
  }
  std::sort(view.free_inputs.begin(), view.free_inputs.end());
  return view;
}

CutStats cut_stats(const Cut& cut)
{
  return CutStats{cut.free_inputs.size(), cut.state_registers.size(), cut.netlist.gates().size()};
}

std::string format_stats(const CutStats& stats)
{
  return "inputs=" + std::to_string(stats.inputs) + " regs=" + std::to_string(stats.regs)
         + " gates=" + std::to_string(stats.gates);
}

}  // namespace fsmforge
