#ifndef GTREX_CSV_HPP
#define GTREX_CSV_HPP

#include <string>

#include <Eigen/Dense>

#include "gtrex/edge_set.hpp"

namespace gtrex {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

/// Comma-separated values, one matrix row per line, full precision.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

void write_edge_set_file(const std::string& path, const EdgeSet& es);
EdgeSet read_edge_set_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gtrex

#endif  // GTREX_CSV_HPP
