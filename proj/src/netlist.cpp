#include "fsmforge/netlist.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <queue>
#include <sstream>

namespace fsmforge {

namespace {

std::string format_with_loc(const std::string& message, SourceLoc loc)
{
  if (loc.line == 0) {
    return message;
  }
  std::ostringstream out;
  out << "line " << loc.line;
  if (loc.column != 0) {
    out << ", column " << loc.column;
  }
  out << ": " << message;
  return out.str();
}

constexpr std::array<std::string_view, 11> kind_names = {
  "AND", "NAND", "OR", "NOR", "NOT", "BUFF", "XOR", "XNOR", "MUX", "CONST0", "CONST1",
};

}  // namespace

NetlistError::NetlistError(const std::string& message, SourceLoc loc)
  : Error(format_with_loc(message, loc)), loc_(loc), detail_(message)
{
}

std::string_view to_string(GateKind kind)
{
  return kind_names.at(static_cast<std::size_t>(kind));
}

std::optional<GateKind> parse_gate_kind(std::string_view text)
{
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
    return static_cast<char>(std::toupper(c));
  });
  if (upper == "BUF") {
    return GateKind::Buff;
  }
  for (std::size_t i = 0; i < kind_names.size(); ++i) {
    if (kind_names[i] == upper) {
      return static_cast<GateKind>(i);
    }
  }
  return std::nullopt;
}

bool arity_ok(GateKind kind, std::size_t n_inputs)
{
  switch (kind) {
  case GateKind::Not:
  case GateKind::Buff:
    return n_inputs == 1;
  case GateKind::Mux:
    return n_inputs == 3;
  case GateKind::Const0:
  case GateKind::Const1:
    return n_inputs == 0;
  default:
    return n_inputs >= 2;
  }
}

std::optional<NetId> Netlist::find_net(std::string_view name) const
{
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<std::size_t> Netlist::find_register(std::string_view name) const
{
  auto it = register_by_name_.find(std::string(name));
  if (it == register_by_name_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::span<const std::size_t> Netlist::fanout(NetId id) const
{
  const auto begin = fanout_offsets_.at(id);
  const auto end = fanout_offsets_.at(id + 1);
  return std::span<const std::size_t>(fanout_gates_).subspan(begin, end - begin);
}

NetId NetlistBuilder::net(std::string_view name, SourceLoc loc)
{
  auto [it, inserted] = nl_.by_name_.try_emplace(std::string(name), static_cast<NetId>(nl_.nets_.size()));
  if (inserted) {
    nl_.nets_.push_back(Net{it->second, std::string(name)});
    nl_.drivers_.emplace_back();
    first_seen_.push_back(loc);
  }
  return it->second;
}

void NetlistBuilder::claim_driver(NetId id, Driver drv, SourceLoc loc)
{
  auto& slot = nl_.drivers_.at(id);
  if (slot.kind != Driver::Kind::None) {
    throw NetlistError("net '" + nl_.nets_[id].name + "' has more than one driver", loc);
  }
  slot = drv;
}

void NetlistBuilder::add_input(std::string_view name, SourceLoc loc)
{
  const NetId id = net(name, loc);
  claim_driver(id, Driver{Driver::Kind::Input, 0}, loc);
  nl_.inputs_.push_back(id);
}

void NetlistBuilder::add_output(std::string_view name, SourceLoc loc)
{
  const NetId id = net(name, loc);
  if (std::find(nl_.outputs_.begin(), nl_.outputs_.end(), id) == nl_.outputs_.end()) {
    nl_.outputs_.push_back(id);
    output_refs_.emplace_back(id, loc);
  }
}

void NetlistBuilder::add_gate(GateKind kind,
                              std::string_view output,
                              std::span<const std::string> inputs,
                              SourceLoc loc)
{
  const NetId out = net(output, loc);
  std::vector<NetId> ins;
  ins.reserve(inputs.size());
  for (const auto& name : inputs) {
    ins.push_back(net(name, loc));
  }
  add_gate(kind, out, std::move(ins), loc);
}

void NetlistBuilder::add_gate(GateKind kind, NetId output, std::vector<NetId> inputs, SourceLoc loc)
{
  if (!arity_ok(kind, inputs.size())) {
    throw NetlistError("gate '" + nl_.nets_.at(output).name + "' of kind " + std::string(to_string(kind))
                         + " cannot take " + std::to_string(inputs.size()) + " input(s)",
                       loc);
  }
  for (NetId in : inputs) {
    if (in >= nl_.nets_.size()) {
      throw NetlistError("gate input refers to unknown net id " + std::to_string(in), loc);
    }
  }
  claim_driver(output, Driver{Driver::Kind::Gate, nl_.gates_.size()}, loc);
  nl_.gates_.push_back(Gate{kind, std::move(inputs), output});
  gate_locs_.push_back(loc);
}

void NetlistBuilder::add_register(std::string_view q, std::string_view d, SourceLoc loc)
{
  const NetId qid = net(q, loc);
  const NetId did = net(d, loc);
  add_register(qid, did, loc);
}

void NetlistBuilder::add_register(NetId q, NetId d, SourceLoc loc)
{
  if (d >= nl_.nets_.size()) {
    throw NetlistError("register input refers to unknown net id " + std::to_string(d), loc);
  }
  claim_driver(q, Driver{Driver::Kind::Register, nl_.registers_.size()}, loc);
  const auto& name = nl_.nets_.at(q).name;
  nl_.register_by_name_.emplace(name, nl_.registers_.size());
  nl_.registers_.push_back(Register{d, q, name});
}

Netlist NetlistBuilder::build()
{
  Netlist& nl = nl_;
  const std::size_t n_nets = nl.nets_.size();

  for (NetId id = 0; id < n_nets; ++id) {
    if (nl.drivers_[id].kind == Driver::Kind::None) {
      throw NetlistError("net '" + nl.nets_[id].name + "' is used but never driven", first_seen_[id]);
    }
  }

  // Fan-out in CSR form.
  nl.fanout_offsets_.assign(n_nets + 1, 0);
  for (const auto& g : nl.gates_) {
    for (NetId in : g.inputs) {
      ++nl.fanout_offsets_[in + 1];
    }
  }
  for (std::size_t i = 0; i < n_nets; ++i) {
    nl.fanout_offsets_[i + 1] += nl.fanout_offsets_[i];
  }
  nl.fanout_gates_.assign(nl.fanout_offsets_.back(), 0);
  {
    std::vector<std::size_t> cursor(nl.fanout_offsets_.begin(), nl.fanout_offsets_.end() - 1);
    for (std::size_t gi = 0; gi < nl.gates_.size(); ++gi) {
      for (NetId in : nl.gates_[gi].inputs) {
        nl.fanout_gates_[cursor[in]++] = gi;
      }
    }
  }

  // Kahn's algorithm; the ready set is ordered by output net id.
  std::vector<std::size_t> pending(nl.gates_.size(), 0);
  for (std::size_t gi = 0; gi < nl.gates_.size(); ++gi) {
    for (NetId in : nl.gates_[gi].inputs) {
      if (nl.drivers_[in].kind == Driver::Kind::Gate) {
        ++pending[gi];
      }
    }
  }
  using Entry = std::pair<NetId, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t gi = 0; gi < nl.gates_.size(); ++gi) {
    if (pending[gi] == 0) {
      ready.emplace(nl.gates_[gi].output, gi);
    }
  }
  nl.topo_.clear();
  nl.topo_.reserve(nl.gates_.size());
  while (!ready.empty()) {
    const auto gi = ready.top().second;
    ready.pop();
    nl.topo_.push_back(gi);
    for (std::size_t reader : nl.fanout(nl.gates_[gi].output)) {
      if (--pending[reader] == 0) {
        ready.emplace(nl.gates_[reader].output, reader);
      }
    }
  }

  if (nl.topo_.size() != nl.gates_.size()) {
    // Every unsorted gate has an unsorted gate driver, so walking backwards
    // from any of them must revisit a gate.
    std::size_t start = 0;
    while (pending[start] == 0) {
      ++start;
    }
    std::vector<std::size_t> order_seen(nl.gates_.size(), SIZE_MAX);
    std::vector<std::size_t> path;
    std::size_t cur = start;
    while (order_seen[cur] == SIZE_MAX) {
      order_seen[cur] = path.size();
      path.push_back(cur);
      for (NetId in : nl.gates_[cur].inputs) {
        const auto& drv = nl.drivers_[in];
        if (drv.kind == Driver::Kind::Gate && pending[drv.index] != 0) {
          cur = drv.index;
          break;
        }
      }
    }
    std::string names;
    for (std::size_t i = path.size(); i-- > order_seen[cur];) {
      names += nl.nets_[nl.gates_[path[i]].output].name;
      names += " -> ";
    }
    names += nl.nets_[nl.gates_[cur].output].name;
    throw NetlistError("combinational cycle: " + names, gate_locs_[cur]);
  }

  std::sort(nl.inputs_.begin(), nl.inputs_.end());

  Netlist out = std::move(nl_);
  nl_ = Netlist{};
  first_seen_.clear();
  gate_locs_.clear();
  output_refs_.clear();
  return out;
}

std::vector<std::size_t> topo_order(const Netlist& netlist)
{
  auto order = netlist.topo_order();
  return {order.begin(), order.end()};
}

}  // namespace fsmforge
