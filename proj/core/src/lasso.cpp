#include "gtrex/lasso.hpp"

#include <algorithm>
#include <cmath>

#include "gtrex/errors.hpp"

namespace gtrex::lasso {

namespace {

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Max KKT violation computed from grad = g - G beta of the gram objective.
double kkt_from_grad(const Eigen::VectorXd& grad, const Eigen::VectorXd& beta, double penalty,
                     int skip) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (j == skip) continue;
    double v;
    if (beta(j) != 0.0)
      v = std::abs(2.0 * grad(j) - penalty * (beta(j) > 0 ? 1.0 : -1.0));
    else
      v = std::max(0.0, 2.0 * std::abs(grad(j)) - penalty);
    worst = std::max(worst, v);
  }
  return worst;
}

void validate_problem(const LassoProblem& problem) {
  const int p = problem.x.p();
  if (problem.node_k < 1 || problem.node_k > p)
    throw ParameterError("lasso: node_k out of range [1," + std::to_string(p) + "]");
  if (problem.lambda < 0.0) throw ParameterError("lasso: lambda must be >= 0");
  if (!problem.x.x.allFinite()) throw DataError("lasso: non-finite entries in data matrix");
}

}  // namespace

GramCdResult cd_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& g, double penalty,
                     Eigen::VectorXd& beta, int skip, double tol, int max_sweeps) {
  const Eigen::Index p = gram.rows();
  Eigen::VectorXd grad = g;
  if (!beta.isZero(0.0)) grad.noalias() -= gram * beta;

  GramCdResult res;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (j == skip) continue;
      const double gjj = gram(j, j);
      if (gjj <= 0.0) continue;  // zero predictor, coordinate stays put
      const double z = grad(j) + gjj * beta(j);
      const double bj = soft_threshold(z, penalty / 2.0) / gjj;
      const double delta = bj - beta(j);
      if (delta != 0.0) {
        grad.noalias() -= delta * gram.col(j);
        beta(j) = bj;
      }
    }
    res.sweeps = sweep;
    res.kkt_residual = kkt_from_grad(grad, beta, penalty, skip);
    if (res.kkt_residual <= tol) {
      // Incremental grad drifts over many updates; accept only if the
      // freshly computed gradient agrees.
      grad = g;
      grad.noalias() -= gram * beta;
      res.kkt_residual = kkt_from_grad(grad, beta, penalty, skip);
      if (res.kkt_residual <= tol) {
        res.converged = true;
        return res;
      }
    } else if (sweep % 128 == 0) {
      grad = g;
      grad.noalias() -= gram * beta;
    }
  }
  return res;
}

LassoSolution lasso_node(const LassoProblem& problem, const Eigen::VectorXd* init, double tol,
                         int max_sweeps) {
  validate_problem(problem);
  const int p = problem.x.p();
  const int k0 = problem.node_k - 1;

  Eigen::MatrixXd gram = problem.x.x.transpose() * problem.x.x;
  Eigen::VectorXd g = gram.col(k0);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  if (init) {
    if (init->size() != p) throw ParameterError("lasso: init has wrong length");
    if ((*init)(k0) != 0.0) throw ParameterError("lasso: init must have init[node_k] = 0");
    beta = *init;
  }

  auto res = cd_gram(gram, g, problem.lambda, beta, k0, tol, max_sweeps);
  if (!res.converged)
    throw ConvergenceError("lasso: sweep cap " + std::to_string(max_sweeps) +
                               " exceeded (node " + std::to_string(problem.node_k) + ")",
                           res.kkt_residual);
  return LassoSolution{std::move(beta), problem.lambda, res.kkt_residual, res.sweeps};
}

double lambda_max_node(const DataMatrix& x, int node_k) {
  const int p = x.p();
  if (node_k < 1 || node_k > p) throw ParameterError("lambda_max_node: node_k out of range");
  if (!x.x.allFinite()) throw DataError("lambda_max_node: non-finite entries");
  const int k0 = node_k - 1;
  Eigen::VectorXd c = x.x.transpose() * x.x.col(k0);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < p; ++j)
    if (j != k0) worst = std::max(worst, std::abs(c(j)));
  return 2.0 * worst;
}

std::vector<double> unit_fraction_grid() {
  std::vector<double> grid(100);
  for (int i = 0; i < 100; ++i) grid[i] = (i + 1) / 100.0;
  return grid;
}

std::vector<LassoSolution> lasso_path_node(const DataMatrix& x, int node_k,
                                           const std::vector<double>& fractions, double tol,
                                           int max_sweeps) {
  if (fractions.empty()) throw ParameterError("lasso_path_node: empty fraction grid");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] <= 0.0 || fractions[i] > 1.0)
      throw ParameterError("lasso_path_node: fractions must lie in (0, 1]");
    if (i > 0 && fractions[i] <= fractions[i - 1])
      throw ParameterError("lasso_path_node: fractions must be strictly increasing");
  }
  const int p = x.p();
  const int k0 = node_k - 1;
  if (node_k < 1 || node_k > p) throw ParameterError("lasso_path_node: node_k out of range");
  if (!x.x.allFinite()) throw DataError("lasso_path_node: non-finite entries");

  Eigen::MatrixXd gram = x.x.transpose() * x.x;
  Eigen::VectorXd g = gram.col(k0);
  double lam_max = 0.0;
  for (Eigen::Index j = 0; j < p; ++j)
    if (j != k0) lam_max = std::max(lam_max, std::abs(g(j)));
  lam_max *= 2.0;

  std::vector<LassoSolution> out(fractions.size());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);  // exact solution at f = 1
  for (std::size_t idx = fractions.size(); idx-- > 0;) {
    double lambda = fractions[idx] * lam_max;
    auto res = cd_gram(gram, g, lambda, beta, k0, tol, max_sweeps);
    if (!res.converged)
      throw ConvergenceError("lasso path: sweep cap exceeded at fraction " +
                                 std::to_string(fractions[idx]),
                             res.kkt_residual);
    out[idx] = LassoSolution{beta, lambda, res.kkt_residual, res.sweeps};
  }
  return out;
}

}  // namespace gtrex::lasso
