#include "lrdcp/series_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "lrdcp/errors.hpp"

namespace lrdcp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n,");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n,");
    return s.substr(b, e - b + 1);
}

bool parse_value(const std::string& tok, double& out) {
    std::size_t pos = 0;
    try {
        out = std::stod(tok, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == tok.size();
}

}  // namespace

std::vector<double> read_series(std::istream& in) {
    std::vector<double> values;
    std::string line;
    long lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string tok = trim(line);
        if (tok.empty() || tok[0] == '#') continue;
        double v;
        if (!parse_value(tok, v)) {
            if (first_content) {  // CSV header
                first_content = false;
                continue;
            }
            throw InputError("line " + std::to_string(lineno) + ": not a number: '" + tok + "'");
        }
        first_content = false;
        if (!std::isfinite(v))
            throw InputError("line " + std::to_string(lineno) + ": non-finite value");
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_series(in);
}

void write_series(std::ostream& out, const std::vector<double>& values) {
    char buf[64];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
}

void write_series_file(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    write_series(out, values);
    if (!out) throw InputError("write failed on '" + path + "'");
}

}  // namespace lrdcp
