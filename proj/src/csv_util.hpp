#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "meanrev/errors.hpp"

namespace meanrev::detail {

// 17 significant digits: enough for double round trips.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& file) {
    std::ofstream out(file, std::ios::binary);  // binary keeps LF endings
    if (!out) throw Error("cannot open for writing: " + file);
    return out;
}

inline std::ifstream open_in(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("cannot open for reading: " + file);
    return in;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& s, std::size_t line_number) {
    const std::string t = strip(s);
    if (t.empty()) throw ParseError("empty numeric field", line_number);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + t + "'", line_number);
    }
    if (pos != t.size()) throw ParseError("trailing junk in number: '" + t + "'", line_number);
    return v;
}

}  // namespace meanrev::detail
