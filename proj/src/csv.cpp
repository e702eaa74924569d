#include "lg/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace lg {

namespace {

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

std::string trim(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

}  // namespace

Sample ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    std::vector<double> values;
    std::string line;
    std::string bad;
    std::size_t lineno = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        double v = 0.0;
        if (!parse_double(t, v)) {
            if (first_content_line) {
                first_content_line = false;  // header line, skip
                continue;
            }
            if (!bad.empty()) bad += ", ";
            bad += "line " + std::to_string(lineno) + " (not numeric: '" + t + "')";
            continue;
        }
        first_content_line = false;
        if (!std::isfinite(v) || v <= 0.0) {
            if (!bad.empty()) bad += ", ";
            bad += "line " + std::to_string(lineno) + " (value " + t +
                   " is not a strictly positive lifetime)";
            continue;
        }
        values.push_back(v);
    }
    if (!bad.empty()) {
        throw std::invalid_argument("invalid entries in " + path + ": " + bad);
    }
    if (values.empty()) {
        throw std::invalid_argument("no numeric data in " + path);
    }
    return Sample(std::move(values));
}

}  // namespace lg
