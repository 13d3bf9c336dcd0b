#include "gtrex/types.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gtrex/errors.hpp"

namespace gtrex {

std::string to_string(Normalization mode) {
  switch (mode) {
    case Normalization::none: return "none";
    case Normalization::columns_sqrt_n: return "columns_sqrt_n";
    case Normalization::rows_sqrt_n: return "rows_sqrt_n";
  }
  return "none";
}

Normalization normalization_from_string(const std::string& name) {
  if (name == "none") return Normalization::none;
  if (name == "columns_sqrt_n") return Normalization::columns_sqrt_n;
  if (name == "rows_sqrt_n") return Normalization::rows_sqrt_n;
  throw ParameterError("unknown normalization mode: " + name);
}

void check_data_matrix(const DataMatrix& dm) {
  const double root_n = std::sqrt(static_cast<double>(dm.n()));
  if (dm.normalization == Normalization::columns_sqrt_n) {
    for (int j = 0; j < dm.p(); ++j) {
      double norm = dm.x.col(j).norm();
      if (std::abs(norm - root_n) > 1e-10)
        throw DataError("DataMatrix: column " + std::to_string(j + 1) + " norm " +
                        std::to_string(norm) + " != sqrt(n)");
    }
  } else if (dm.normalization == Normalization::rows_sqrt_n) {
    for (int i = 0; i < dm.n(); ++i) {
      double norm = dm.x.row(i).norm();
      if (std::abs(norm - root_n) > 1e-10)
        throw DataError("DataMatrix: row " + std::to_string(i + 1) + " norm " +
                        std::to_string(norm) + " != sqrt(n)");
    }
  }
}

void check_precision_model(const PrecisionModel& pm, double cond_rel_tol) {
  const auto p = pm.theta.rows();
  if (p != pm.theta.cols() || p != pm.edge_set.p())
    throw ParameterError("PrecisionModel: dimension mismatch");
  if (pm.theta != pm.theta.transpose())
    throw NumericError("PrecisionModel: theta not exactly symmetric");
  for (Eigen::Index i = 0; i < p; ++i) {
    if (pm.theta(i, i) != pm.diag_value)
      throw NumericError("PrecisionModel: diagonal entry differs from diag_value");
    for (Eigen::Index j = i + 1; j < p; ++j) {
      double v = std::abs(pm.theta(i, j));
      bool in_set = pm.edge_set.contains(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
      if (in_set) {
        if (v < pm.a_min || v > pm.a_max)
          throw NumericError("PrecisionModel: edge weight magnitude outside [a_min, a_max]");
      } else if (v != 0.0) {
        throw NumericError("PrecisionModel: nonzero entry off the edge support");
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pm.theta);
  if (eig.info() != Eigen::Success) throw NumericError("PrecisionModel: eigensolver failed");
  double lo = eig.eigenvalues().minCoeff();
  double hi = eig.eigenvalues().maxCoeff();
  if (lo <= 0.0) throw NumericError("PrecisionModel: not positive definite");
  double cond = hi / lo;
  double target = pm.degenerate ? 1.0 : pm.cond_target;
  if (std::abs(cond - target) > cond_rel_tol * target)
    throw NumericError("PrecisionModel: condition number " + std::to_string(cond) +
                       " misses target " + std::to_string(target));
}

void check_frequency_matrix(const FrequencyMatrix& fm) {
  if (fm.b < 1) throw ParameterError("FrequencyMatrix: b must be >= 1");
  if (fm.f.rows() != fm.f.cols()) throw ParameterError("FrequencyMatrix: f must be square");
  for (Eigen::Index i = 0; i < fm.f.rows(); ++i) {
    if (fm.f(i, i) != 0.0) throw NumericError("FrequencyMatrix: nonzero diagonal");
    for (Eigen::Index j = 0; j < fm.f.cols(); ++j) {
      double v = fm.f(i, j);
      if (v < 0.0 || v > 1.0) throw NumericError("FrequencyMatrix: entry outside [0,1]");
      double scaled = v * fm.b;
      if (std::abs(scaled - std::round(scaled)) > 1e-12 * fm.b)
        throw NumericError("FrequencyMatrix: entry is not a multiple of 1/b");
    }
  }
}

void check_path_result(const PathResult& pr) {
  if (pr.grid.size() != pr.edge_sets.size())
    throw ParameterError("PathResult: grid and edge_sets length mismatch");
  for (std::size_t i = 1; i < pr.grid.size(); ++i)
    if (pr.grid[i] <= pr.grid[i - 1])
      throw ParameterError("PathResult: grid not strictly increasing");
}

}  // namespace gtrex
