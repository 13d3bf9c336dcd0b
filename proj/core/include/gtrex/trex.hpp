#ifndef GTREX_TREX_HPP
#define GTREX_TREX_HPP

#include <vector>

#include <Eigen/Dense>

#include "gtrex/types.hpp"

namespace gtrex::trex {

/// Solver settings for the node TREX objective. max_iter = 0 selects the
/// default ceil(0.2 * p).
struct TrexConfig {
  int q = 40;               // even surrogate norm order
  double opt_tol = 1e-7;    // first-order optimality tolerance
  double prog_tol = 1e-9;   // relative progress tolerance
  int max_iter = 0;
  double denom_guard = 1e-12;
};

/// Node-k objective with the smooth q-norm surrogate of the max correlation:
///   ||X^k - X beta||^2 / ||(X^{-k})' (X^k - X beta)||_q + ||beta||_1
/// with beta_k = 0. Returns +infinity when the denominator falls below
/// denom_guard (such a point is rejected upstream, never kept as a solution).
/// node_k is 1-based.
double trex_objective(const DataMatrix& x_bar, int node_k, const Eigen::VectorXd& beta, int q,
                      double denom_guard = 1e-12);

/// Gradient of the smooth ratio term (quotient rule through the q-norm
/// composition); component node_k is forced to zero. The l1 part is handled
/// by the solver's orthant projection, not here.
Eigen::VectorXd trex_subgradient(const DataMatrix& x_bar, int node_k, const Eigen::VectorXd& beta,
                                 int q, double denom_guard = 1e-12);

/// Projected scaled subgradient descent over orthants: pseudo-gradient of the
/// smooth term plus the linearized l1 term, spectral (Barzilai-Borwein) step,
/// backtracking accepting only objective decrease, and projection to zero of
/// coordinates that leave the working orthant. Stops at the first of
/// first-order optimality < opt_tol, relative progress < prog_tol, or
/// max_iter iterations; the best finite-objective iterate (including the
/// initial point) is returned. If accepted_objectives is given it receives
/// the non-increasing sequence of accepted objective values.
Eigen::VectorXd solve_trex_node(const DataMatrix& x_bar, int node_k, const TrexConfig& cfg,
                                const Eigen::VectorXd* init = nullptr,
                                std::vector<double>* accepted_objectives = nullptr);

}  // namespace gtrex::trex

#endif  // GTREX_TREX_HPP
