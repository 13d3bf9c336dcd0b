#include "gtrex/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "gtrex/errors.hpp"

namespace gtrex {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open for writing: " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open for reading: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* s = line.c_str();
    char* end = nullptr;
    while (*s) {
      double v = std::strtod(s, &end);
      if (end == s) throw DataError("malformed number in " + path);
      row.push_back(v);
      s = end;
      if (*s == ',') ++s;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty matrix file: " + path);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_edge_set_file(const std::string& path, const EdgeSet& es) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  es.write(os);
}

EdgeSet read_edge_set_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open for reading: " + path);
  return EdgeSet::parse(is);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os << content;
}

}  // namespace gtrex
