#pragma once

#include "fsmforge/netlist.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include <json.hpp>

namespace fsmforge {

/// Parses the ISCAS89 `.bench` dialect:
///
///   INPUT(name)
///   OUTPUT(name)
///   name = DFF(net)
///   name = KIND(net, ...)      KIND in AND NAND OR NOR NOT BUFF XOR XNOR MUX CONST0 CONST1
///
/// Keywords are case-insensitive, net names case-sensitive, `#` starts a
/// comment. Throws NetlistError carrying the line and column.
[[nodiscard]] Netlist parse_bench(std::string_view text);
[[nodiscard]] Netlist parse_bench(std::istream& in);

/// Reads and parses a file. A missing or unreadable file raises
/// NetlistError as well.
[[nodiscard]] Netlist read_bench_file(const std::filesystem::path& path);

/// Canonical text: INPUTs, OUTPUTs, DFFs, then gates in topological order.
[[nodiscard]] std::string write_bench(const Netlist& netlist);

/// {"nets":[...], "inputs":[...], "outputs":[...], "registers":[...], "gates":[...]}
/// with all net references by name.
[[nodiscard]] nlohmann::json to_json(const Netlist& netlist);
[[nodiscard]] Netlist netlist_from_json(const nlohmann::json& doc);

}  // namespace fsmforge
