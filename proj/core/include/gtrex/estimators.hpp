#ifndef GTREX_ESTIMATORS_HPP
#define GTREX_ESTIMATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gtrex/lasso.hpp"
#include "gtrex/rng.hpp"
#include "gtrex/trex.hpp"
#include "gtrex/types.hpp"

namespace gtrex::estimators {

/// An iterative-solver coefficient counts as nonzero when it exceeds this,
/// so support extraction does not depend on the solver's residual noise.
inline constexpr double kSupportThreshold = 1e-10;

/// The source material labels the max-rule set "and" and the min-rule set
/// "or"; we expose semantic names and keep those labels as metadata for
/// table reproduction.
inline constexpr const char* kPaperLabelUnion = "MB(and)";
inline constexpr const char* kPaperLabelIntersection = "MB(or)";

/// Per-node lasso coefficients assembled into edge sets. Column k of c holds
/// the node-k solution; the union rule keeps pairs where either direction
/// selects, the intersection rule where both do.
struct NeighborhoodResult {
  Eigen::MatrixXd c;
  EdgeSet edges_union;
  EdgeSet edges_intersection;
  double lambda_fraction = 0.0;
};

/// Union/intersection edge sets from a coefficient matrix at the support
/// threshold.
std::pair<EdgeSet, EdgeSet> edges_from_coefficients(const Eigen::MatrixXd& c);

/// Runs the node-k lasso at lambda = lambda_fraction * lambda_max_node(x, k)
/// for every node. x is expected to be normalized (benchmark convention).
NeighborhoodResult neighborhood_select(const DataMatrix& x, double lambda_fraction,
                                       double tol = lasso::kDefaultTol);

/// Edge-set families over the fraction grid for both rules, computed with
/// per-node warm starts from the largest fraction down. Tags: "ns_union",
/// "ns_intersection".
std::pair<PathResult, PathResult> neighborhood_path(const DataMatrix& x,
                                                    const std::vector<double>& fractions,
                                                    double tol = lasso::kDefaultTol);

/// Draws n row indices uniformly with replacement and keeps the distinct
/// ones in first-occurrence order (~63.2% of rows in expectation).
DataMatrix sequential_bootstrap(const DataMatrix& x, Rng& rng);

struct GtrexResult {
  FrequencyMatrix freq;
  EdgeSet edges;
  double threshold = 0.0;
  int b = 0;
};

/// Edges {i,j} with max(F_ij, F_ji) strictly above t.
EdgeSet edges_from_freq(const FrequencyMatrix& freq, double t);

/// GTREX: for each node k and each of b sequential bootstrap samples, solve
/// the node TREX and add 1/b to F[k][m] for every selected m. Edge rule:
/// max(F_ij, F_ji) > t, strict. Substreams are derived from `seed` per
/// (node, bootstrap), so results do not depend on `jobs`. A node with more
/// than b/2 failed bootstrap solves aborts the run naming the node.
GtrexResult gtrex(const DataMatrix& x, int b, double t, const trex::TrexConfig& cfg,
                  std::uint64_t seed, int jobs = 0);

/// Re-thresholds an existing frequency matrix over a grid; no re-solving.
PathResult gtrex_threshold_path(const FrequencyMatrix& freq, const std::vector<double>& thresholds);

struct GlassoResult {
  Eigen::MatrixXd theta_hat;
  EdgeSet edges;
  double lambda = 0.0;
  double kkt_residual = 0.0;
  int sweeps = 0;
};

/// Graphical lasso: minimize -log det(Theta) + trace(S Theta) + lambda
/// ||Theta||_1 over positive definite Theta by block coordinate descent over
/// columns, each block a lasso subproblem on the current covariance estimate.
/// The l1 norm sums all entries, so the diagonal is penalized; set
/// penalize_diagonal = false for the common alternative. Stationarity is
/// verified on W = theta_hat^{-1}: |S_ij - W_ij| <= lambda off-diagonal with
/// lambda * sign agreement on nonzeros, within tol.
GlassoResult glasso(const Eigen::MatrixXd& sample_cov, double lambda, double tol = 1e-6,
                    bool penalize_diagonal = true, int max_outer_sweeps = 200);

/// Edge-set family at lambda = f * max_{i != j} |S_ij| over the fraction
/// grid, warm-started from the largest fraction down. Tag: "glasso".
PathResult glasso_path(const DataMatrix& x, const std::vector<double>& fractions,
                       double tol = 1e-6, bool penalize_diagonal = true);

/// S = X'X / n.
Eigen::MatrixXd sample_covariance(const DataMatrix& x);

}  // namespace gtrex::estimators

#endif  // GTREX_ESTIMATORS_HPP
