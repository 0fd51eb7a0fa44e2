#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Series files: one value per line, plain text. The reader also accepts a
// single-column CSV with an optional header line and tolerates trailing
// commas/whitespace. Non-numeric data or NaN raises InputError.

namespace lrdcp {

std::vector<double> read_series(std::istream& in);
std::vector<double> read_series_file(const std::string& path);

void write_series(std::ostream& out, const std::vector<double>& values);
void write_series_file(const std::string& path, const std::vector<double>& values);

}  // namespace lrdcp
