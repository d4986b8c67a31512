#include "fracid_cli/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "fracid/errors.hpp"
#include "fracid_cli/config.hpp"

namespace fracid::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& cell, const std::string& where) {
    const std::string s = trim(cell);
    if (s.empty()) throw InputError(where + ": empty field");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw InputError(where + ": cannot parse '" + s + "' as a real number");
    return v;
}

}  // namespace

Observation read_observation_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(name + ": empty file; expected header 't,psi'");
    if (trim(line) != "t,psi") throw InputError(name + ":1: expected header 't,psi', found '" + trim(line) + "'");
    Observation obs;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw InputError(where + ": expected two comma-separated fields");
        obs.times.push_back(parse_real(line.substr(0, comma), where));
        obs.values.push_back(parse_real(line.substr(comma + 1), where));
        if (obs.times.size() == 1 && obs.times.front() != 0.0) throw InputError(where + ": first row must have t = 0");
        if (obs.times.size() > 1 && !(obs.times.back() > obs.times[obs.times.size() - 2]))
            throw InputError(where + ": times must be strictly increasing");
    }
    if (obs.times.empty()) throw InputError(name + ": no data rows");
    obs.psi0 = obs.values.front();
    return obs;
}

Observation read_observation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file '" + path + "'");
    return read_observation_csv(in, path);
}

std::string format_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string format_number(const std::optional<double>& v, int precision) {
    return v ? format_number(*v, precision) : std::string();
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

void write_observation_csv(std::ostream& out, const Observation& obs, int precision) {
    out << "t,psi\n";
    for (std::size_t k = 0; k < obs.times.size(); ++k)
        write_row(out, {format_number(obs.times[k], precision), format_number(obs.values[k], precision)});
}

}  // namespace fracid::cli
