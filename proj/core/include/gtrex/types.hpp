#ifndef GTREX_TYPES_HPP
#define GTREX_TYPES_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gtrex/edge_set.hpp"

namespace gtrex {

enum class Normalization { none, columns_sqrt_n, rows_sqrt_n };

std::string to_string(Normalization mode);
Normalization normalization_from_string(const std::string& name);

/// n x p sample matrix with its normalization state.
struct DataMatrix {
  Eigen::MatrixXd x;
  Normalization normalization = Normalization::none;

  int n() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }
};

/// Symmetric positive-definite precision matrix with off-diagonal support
/// equal to edge_set, all diagonal entries equal to diag_value, and condition
/// number equal to cond_target (up to the degenerate empty-graph case).
struct PrecisionModel {
  Eigen::MatrixXd theta;
  EdgeSet edge_set;
  double diag_value = 0.0;
  double cond_target = 0.0;
  double a_min = 0.0;
  double a_max = 0.0;
  /// Set when the off-diagonal part was zero, forcing theta = I (cond = 1).
  bool degenerate = false;
};

/// p x p edge-selection frequencies from b bootstrap runs. Row k aggregates
/// the node-k regressions, so f is not symmetric in general; the diagonal is
/// zero and every entry is an integer multiple of 1/b.
struct FrequencyMatrix {
  Eigen::MatrixXd f;
  int b = 0;

  int p() const { return static_cast<int>(f.rows()); }
};

/// Family of edge sets indexed by a strictly increasing tuning grid
/// (penalty fractions for the lasso-based methods, thresholds for GTREX).
struct PathResult {
  std::vector<double> grid;
  std::vector<EdgeSet> edge_sets;
  std::string method_tag;
};

// Invariant checkers; throw with a description on violation. The precision
// checker runs a full eigendecomposition (positive definiteness plus the
// condition-number match within 1e-8 relative).
void check_data_matrix(const DataMatrix& dm);
void check_precision_model(const PrecisionModel& pm, double cond_rel_tol = 1e-8);
void check_frequency_matrix(const FrequencyMatrix& fm);
void check_path_result(const PathResult& pr);

}  // namespace gtrex

#endif  // GTREX_TYPES_HPP
