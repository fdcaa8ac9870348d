#include "fsmforge/bench.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fsmforge {

namespace {

bool is_name_char(char c)
{
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != '='
         && c != '#';
}

bool iequals(std::string_view a, std::string_view b)
{
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

class LineLexer
{
public:
  LineLexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_space()
  {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }

  [[nodiscard]] SourceLoc here() const { return {line_no_, pos_ + 1}; }

  [[nodiscard]] bool at_end()
  {
    skip_space();
    return pos_ >= line_.size();
  }

  [[nodiscard]] bool peek(char c)
  {
    skip_space();
    return pos_ < line_.size() && line_[pos_] == c;
  }

  void expect(char c)
  {
    skip_space();
    if (pos_ >= line_.size() || line_[pos_] != c) {
      throw NetlistError(std::string("expected '") + c + "'", here());
    }
    ++pos_;
  }

  std::string_view name(const char* what)
  {
    skip_space();
    const auto start = pos_;
    while (pos_ < line_.size() && is_name_char(line_[pos_])) {
      ++pos_;
    }
    if (start == pos_) {
      throw NetlistError(std::string("expected ") + what, SourceLoc{line_no_, start + 1});
    }
    return line_.substr(start, pos_ - start);
  }

private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

void parse_statement(NetlistBuilder& builder, std::string_view line, std::size_t line_no)
{
  LineLexer lex(line, line_no);
  if (lex.at_end()) {
    return;
  }
  const SourceLoc start = lex.here();
  const auto head = lex.name("statement");

  if (lex.peek('(')) {
    const bool is_input = iequals(head, "INPUT");
    if (!is_input && !iequals(head, "OUTPUT")) {
      throw NetlistError("unknown declaration '" + std::string(head) + "'", start);
    }
    lex.expect('(');
    const SourceLoc name_loc = lex.here();
    const auto net = lex.name("net name");
    lex.expect(')');
    if (!lex.at_end()) {
      throw NetlistError("trailing characters after declaration", lex.here());
    }
    if (is_input) {
      builder.add_input(net, name_loc);
    } else {
      builder.add_output(net, name_loc);
    }
    return;
  }

  lex.expect('=');
  const SourceLoc kind_loc = lex.here();
  const auto kind_text = lex.name("gate type");
  lex.expect('(');
  std::vector<std::string> args;
  if (!lex.peek(')')) {
    args.emplace_back(lex.name("net name"));
    while (lex.peek(',')) {
      lex.expect(',');
      args.emplace_back(lex.name("net name"));
    }
  }
  lex.expect(')');
  if (!lex.at_end()) {
    throw NetlistError("trailing characters after gate", lex.here());
  }

  if (iequals(kind_text, "DFF")) {
    if (args.size() != 1) {
      throw NetlistError("DFF '" + std::string(head) + "' takes exactly 1 input, got "
                           + std::to_string(args.size()),
                         start);
    }
    builder.add_register(head, args[0], start);
    return;
  }
  const auto kind = parse_gate_kind(kind_text);
  if (!kind) {
    throw NetlistError("unknown gate type '" + std::string(kind_text) + "'", kind_loc);
  }
  builder.add_gate(*kind, head, args, start);
}

}  // namespace

Netlist parse_bench(std::string_view text)
{
  NetlistBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    auto line = text.substr(pos, eol - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    parse_statement(builder, line, line_no);
    pos = eol + 1;
  }
  return builder.build();
}

Netlist parse_bench(std::istream& in)
{
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bench(buf.str());
}

Netlist read_bench_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw NetlistError("cannot open netlist file '" + path.string() + "'");
  }
  return parse_bench(in);
}

std::string write_bench(const Netlist& netlist)
{
  std::ostringstream out;
  const auto name = [&](NetId id) -> const std::string& { return netlist.net(id).name; };
  for (NetId id : netlist.primary_inputs()) {
    out << "INPUT(" << name(id) << ")\n";
  }
  for (NetId id : netlist.primary_outputs()) {
    out << "OUTPUT(" << name(id) << ")\n";
  }
  for (const auto& r : netlist.registers()) {
    out << name(r.q) << " = DFF(" << name(r.d) << ")\n";
  }
  const auto gates = netlist.gates();
  for (std::size_t gi : netlist.topo_order()) {
    const Gate& g = gates[gi];
    out << name(g.output) << " = " << to_string(g.kind) << "(";
    for (std::size_t i = 0; i < g.inputs.size(); ++i) {
      out << (i ? ", " : "") << name(g.inputs[i]);
    }
    out << ")\n";
  }
  return out.str();
}

nlohmann::json to_json(const Netlist& netlist)
{
  using nlohmann::json;
  const auto name = [&](NetId id) { return netlist.net(id).name; };
  json nets = json::array();
  for (const auto& n : netlist.nets()) {
    nets.push_back({{"id", n.id}, {"name", n.name}});
  }
  json inputs = json::array();
  for (NetId id : netlist.primary_inputs()) {
    inputs.push_back(name(id));
  }
  json outputs = json::array();
  for (NetId id : netlist.primary_outputs()) {
    outputs.push_back(name(id));
  }
  json regs = json::array();
  for (const auto& r : netlist.registers()) {
    regs.push_back({{"name", r.name}, {"d", name(r.d)}, {"q", name(r.q)}});
  }
  json gates = json::array();
  for (const auto& g : netlist.gates()) {
    json ins = json::array();
    for (NetId in : g.inputs) {
      ins.push_back(name(in));
    }
    gates.push_back({{"kind", std::string(to_string(g.kind))}, {"output", name(g.output)}, {"inputs", ins}});
  }
  return json{{"nets", nets}, {"inputs", inputs}, {"outputs", outputs}, {"registers", regs}, {"gates", gates}};
}

Netlist netlist_from_json(const nlohmann::json& doc)
{
  NetlistBuilder builder;
  try {
    if (doc.contains("nets")) {
      for (const auto& n : doc.at("nets")) {
        builder.net(n.at("name").get<std::string>());
      }
    }
    for (const auto& n : doc.at("inputs")) {
      builder.add_input(n.get<std::string>());
    }
    for (const auto& r : doc.at("registers")) {
      builder.add_register(r.at("q").get<std::string>(), r.at("d").get<std::string>());
    }
    for (const auto& g : doc.at("gates")) {
      const auto kind_text = g.at("kind").get<std::string>();
      const auto kind = parse_gate_kind(kind_text);
      if (!kind) {
        throw NetlistError("unknown gate type '" + kind_text + "'");
      }
      const auto ins = g.at("inputs").get<std::vector<std::string>>();
      builder.add_gate(*kind, g.at("output").get<std::string>(), ins);
    }
    for (const auto& n : doc.at("outputs")) {
      builder.add_output(n.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw NetlistError(std::string("malformed netlist JSON: ") + e.what());
  }
  return builder.build();
}

}  // namespace fsmforge
