#ifndef GTREX_LASSO_HPP
#define GTREX_LASSO_HPP

#include <vector>

#include <Eigen/Dense>

#include "gtrex/types.hpp"

namespace gtrex::lasso {

inline constexpr double kDefaultTol = 1e-7;
inline constexpr int kDefaultMaxSweeps = 10000;

/// Node regression: minimize ||X^k - X beta||^2 + lambda ||beta||_1 subject
/// to beta_k = 0. node_k is 1-based. No 1/n or 1/2 factor on the residual, so
/// the coordinate update soft-thresholds at lambda / (2 ||X_j||^2).
struct LassoProblem {
  const DataMatrix& x;
  int node_k;
  double lambda;
};

struct LassoSolution {
  Eigen::VectorXd beta;  // beta[node_k - 1] == 0 exactly
  double lambda = 0.0;
  double kkt_residual = 0.0;
  int sweeps = 0;
};

/// Cyclic coordinate descent with soft-thresholding. Converged when the KKT
/// residual (max violation of |2 X_j'(X^k - X beta)| <= lambda on zeros and
/// 2 X_j'(X^k - X beta) = lambda sign(beta_j) on nonzeros) is at most tol.
/// Throws ConvergenceError with the residual if max_sweeps is exceeded.
LassoSolution lasso_node(const LassoProblem& problem, const Eigen::VectorXd* init = nullptr,
                         double tol = kDefaultTol, int max_sweeps = kDefaultMaxSweeps);

/// 2 max_{j != k} |X_j' X^k|: the smallest lambda whose solution is zero.
double lambda_max_node(const DataMatrix& x, int node_k);

/// Solutions at lambda = f * lambda_max_node(x, node_k) for each grid
/// fraction f, computed from the largest fraction down with warm starts.
std::vector<LassoSolution> lasso_path_node(const DataMatrix& x, int node_k,
                                           const std::vector<double>& fractions,
                                           double tol = kDefaultTol,
                                           int max_sweeps = kDefaultMaxSweeps);

/// The benchmark grid {0.01, 0.02, ..., 1.00}.
std::vector<double> unit_fraction_grid();

/// Gram-form core shared with the covariance solvers: minimizes
///   beta' G beta - 2 g' beta + penalty ||beta||_1
/// by cyclic coordinate descent, skipping index `skip` (0-based, -1 for
/// none). beta is updated in place; the return carries the final KKT
/// residual, sweep count, and convergence flag.
struct GramCdResult {
  double kkt_residual = 0.0;
  int sweeps = 0;
  bool converged = false;
};
GramCdResult cd_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& g, double penalty,
                     Eigen::VectorXd& beta, int skip, double tol, int max_sweeps);

}  // namespace gtrex::lasso

#endif  // GTREX_LASSO_HPP
