#include "csv.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcs/errors.hpp"

namespace qcs::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
  // row is 1-based over data lines; the header is row 0 in error messages.
  if (cell.empty())
    throw InvalidDataError("empty cell at row " + std::to_string(row) + ", column " + column);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0' || errno == ERANGE)
    throw InvalidDataError("cannot parse '" + cell + "' at row " + std::to_string(row) +
                           ", column " + column);
  if (!std::isfinite(v))
    throw InvalidDataError("non-finite value '" + cell + "' at row " + std::to_string(row) +
                           ", column " + column);
  return v;
}

}  // namespace

TimeSeriesMatrix load_csv(const std::string& path,
                          const std::vector<std::string>& selected_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidDataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw InvalidDataError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_line(line);
  if (header.empty()) throw InvalidDataError("'" + path + "' has an empty header");

  // Resolve selectors to column indices.
  std::vector<std::size_t> picks;
  if (selected_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) picks.push_back(c);
  } else {
    for (const std::string& raw : selected_columns) {
      const std::string want = trim(raw);
      std::size_t found = header.size();
      for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == want) {
          found = c;
          break;
        }
      if (found == header.size() && all_digits(want)) {
        std::size_t idx = std::stoul(want);
        if (idx >= 1 && idx <= header.size()) found = idx - 1;
      }
      if (found == header.size())
        throw InvalidDataError("column '" + want + "' not found in '" + path + "'");
      picks.push_back(found);
    }
  }

  std::vector<std::string> names;
  names.reserve(picks.size());
  for (std::size_t c : picks) names.push_back(header[c]);

  std::vector<double> values;
  std::size_t nrows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++nrows;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw InvalidDataError("row " + std::to_string(nrows) + " has " +
                             std::to_string(cells.size()) + " fields, expected " +
                             std::to_string(header.size()));
    for (std::size_t c : picks) values.push_back(parse_cell(cells[c], nrows, header[c]));
  }
  return make_time_series(nrows, picks.size(), std::move(values), names);
}

void write_series_csv(const std::string& path, const TimeSeriesMatrix& X) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidDataError("cannot write '" + path + "'");
  for (std::size_t j = 0; j < X.d; ++j) {
    if (j) out << ',';
    out << X.names[j];
  }
  out << '\n';
  char buf[40];
  for (std::size_t t = 0; t < X.n; ++t) {
    for (std::size_t j = 0; j < X.d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", X.at(t, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace qcs::cli
