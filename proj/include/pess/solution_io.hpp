#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "pess/types.hpp"

namespace pess {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  int line_number;
};

// Solution text format: line 1 is "n R", lines 2..n+1 are "x y z". All reals
// at 17 significant digits, LF line endings.
std::string format_solution(const Solution& s);
void write_solution(const std::string& path, const Solution& s);
Solution read_solution(const std::string& path);  // throws ParseError

// Best-known records: CSV with header "n,radius".
std::map<std::size_t, double> read_records(const std::string& path);

}  // namespace pess
