#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracid/identify.hpp"

namespace fracid::cli {

// Reads a `t,psi` table; the first row must be t = 0. Throws InputError with the line number.
Observation read_observation_csv(std::istream& in, const std::string& name = "<input>");
Observation read_observation_csv(const std::string& path);

void write_observation_csv(std::ostream& out, const Observation& obs, int precision = 10);

// Formats a value with `precision` significant digits ("" for nullopt).
std::string format_number(double v, int precision = 10);
std::string format_number(const std::optional<double>& v, int precision = 10);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace fracid::cli
