#pragma once

#include <iosfwd>
#include <string>

#include "bmc/core.hpp"

namespace bmc {

/// Parse failure with the 1-based line number where it occurred.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what) : Error(what), line(line) {}
  int line;
};

/// Formats a double so that reading it back reproduces the exact value.
std::string format_double(double v);

// Instance files: CSV with header `t,length,read_rate`, rows in time
// order, 1-based t. Schedule files: CSV with header `t,width`.

void write_instance_csv(std::ostream& out, const Instance& instance);
void write_instance_csv(const std::string& path, const Instance& instance);
Instance read_instance_csv(std::istream& in);
Instance read_instance_csv(const std::string& path);

void write_schedule_csv(std::ostream& out, const Schedule& schedule);
void write_schedule_csv(const std::string& path, const Schedule& schedule);
Schedule read_schedule_csv(std::istream& in);
Schedule read_schedule_csv(const std::string& path);

}  // namespace bmc
