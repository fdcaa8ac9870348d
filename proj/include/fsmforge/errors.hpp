#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsmforge {

/// Position in a source text, 1-based. A zero line means "unknown".
struct SourceLoc
{
  std::size_t line = 0;
  std::size_t column = 0;
};

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent netlist: syntax, undefined nets, duplicate
/// drivers, arity mismatches and combinational cycles.
class NetlistError : public Error
{
public:
  NetlistError(const std::string& message, SourceLoc loc = {});

  [[nodiscard]] SourceLoc location() const { return loc_; }
  [[nodiscard]] const std::string& detail() const { return detail_; }

private:
  SourceLoc loc_;
  std::string detail_;
};

/// FSM description does not match the netlist (unknown or duplicate
/// register, bad reset width).
class SpecError : public Error
{
public:
  using Error::Error;
};

/// A configured resource guard refused the request up front.
class GuardError : public Error
{
public:
  using Error::Error;
};

}  // namespace fsmforge
