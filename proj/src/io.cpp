#include "phase/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace phase {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void save_field(const std::string& path, const Field& u) {
  validate(u);
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings
  if (!out) throw std::runtime_error("save_field: cannot open " + path);
  out << "index,theta,value\n";
  for (int i = 0; i < u.grid->K; ++i)
    out << i << ',' << format_double(u.grid->theta[i]) << ','
        << format_double(u.v[i]) << '\n';
  if (!out) throw std::runtime_error("save_field: write failed for " + path);
}

Field load_field(const std::string& path, const SphereGrid& grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_field: cannot open " + path);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) throw ParseError("empty file", lineno);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,theta,value")
    throw ParseError("bad header, expected index,theta,value", lineno);
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    long idx = -1;
    double theta = 0.0, value = 0.0;
    if (!std::getline(row, tok, ',')) throw ParseError("missing index", lineno);
    try {
      idx = std::stol(tok);
    } catch (...) {
      throw ParseError("bad index field", lineno);
    }
    if (!std::getline(row, tok, ',')) throw ParseError("missing theta", lineno);
    try {
      theta = std::stod(tok);
    } catch (...) {
      throw ParseError("bad theta field", lineno);
    }
    if (!std::getline(row, tok, ',')) throw ParseError("missing value", lineno);
    try {
      value = std::stod(tok);
    } catch (...) {
      throw ParseError("bad value field", lineno);
    }
    (void)theta;
    if (idx != long(values.size())) throw ParseError("index out of order", lineno);
    values.push_back(value);
  }
  if (int(values.size()) != grid.K)
    throw std::invalid_argument("load_field: node count " +
                                std::to_string(values.size()) +
                                " does not match grid K=" + std::to_string(grid.K));
  Field u(grid);
  u.v = std::move(values);
  validate(u);
  return u;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

}  // namespace phase
