#include "gtrex/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "gtrex/errors.hpp"
#include "gtrex/parallel.hpp"

namespace gtrex::estimators {

std::pair<EdgeSet, EdgeSet> edges_from_coefficients(const Eigen::MatrixXd& c) {
  const int p = static_cast<int>(c.rows());
  EdgeSet uni(p), inter(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const bool ij = std::abs(c(i, j)) > kSupportThreshold;
      const bool ji = std::abs(c(j, i)) > kSupportThreshold;
      if (ij || ji) uni.add(i + 1, j + 1);
      if (ij && ji) inter.add(i + 1, j + 1);
    }
  }
  return {std::move(uni), std::move(inter)};
}

NeighborhoodResult neighborhood_select(const DataMatrix& x, double lambda_fraction, double tol) {
  if (lambda_fraction <= 0.0 || lambda_fraction > 1.0)
    throw ParameterError("neighborhood_select: lambda_fraction must lie in (0, 1]");
  const int p = x.p();
  // Same gram arithmetic as the path code, so lambda_fraction = 1 lands on
  // the exact all-zero solution for every node.
  Eigen::MatrixXd gram = x.x.transpose() * x.x;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, p);
  for (int k0 = 0; k0 < p; ++k0) {
    Eigen::VectorXd g = gram.col(k0);
    double lam_max = 0.0;
    for (int j = 0; j < p; ++j)
      if (j != k0) lam_max = std::max(lam_max, std::abs(g(j)));
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    auto res = lasso::cd_gram(gram, g, lambda_fraction * 2.0 * lam_max, beta, k0, tol,
                              lasso::kDefaultMaxSweeps);
    if (!res.converged)
      throw ConvergenceError("neighborhood_select: node " + std::to_string(k0 + 1) +
                                 " did not converge",
                             res.kkt_residual);
    c.col(k0) = beta;
  }
  auto [uni, inter] = edges_from_coefficients(c);
  return NeighborhoodResult{std::move(c), std::move(uni), std::move(inter), lambda_fraction};
}

std::pair<PathResult, PathResult> neighborhood_path(const DataMatrix& x,
                                                    const std::vector<double>& fractions,
                                                    double tol) {
  if (fractions.empty()) throw ParameterError("neighborhood_path: empty grid");
  const int p = x.p();
  const auto n_frac = fractions.size();

  // One gram matrix serves every node: the node-k response correlations are
  // just column k, and the beta_k = 0 constraint drops the kth coordinate.
  Eigen::MatrixXd gram = x.x.transpose() * x.x;
  std::vector<Eigen::MatrixXd> coeff(n_frac, Eigen::MatrixXd::Zero(p, p));

  for (int k0 = 0; k0 < p; ++k0) {
    Eigen::VectorXd g = gram.col(k0);
    double lam_max = 0.0;
    for (int j = 0; j < p; ++j)
      if (j != k0) lam_max = std::max(lam_max, std::abs(g(j)));
    lam_max *= 2.0;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    for (std::size_t idx = n_frac; idx-- > 0;) {
      if (fractions[idx] <= 0.0 || fractions[idx] > 1.0)
        throw ParameterError("neighborhood_path: fractions must lie in (0, 1]");
      auto res = lasso::cd_gram(gram, g, fractions[idx] * lam_max, beta, k0, tol,
                                lasso::kDefaultMaxSweeps);
      if (!res.converged)
        throw ConvergenceError("neighborhood_path: node " + std::to_string(k0 + 1) +
                                   " did not converge at fraction " +
                                   std::to_string(fractions[idx]),
                               res.kkt_residual);
      coeff[idx].col(k0) = beta;
    }
  }

  PathResult uni{fractions, {}, "ns_union"};
  PathResult inter{fractions, {}, "ns_intersection"};
  uni.edge_sets.reserve(n_frac);
  inter.edge_sets.reserve(n_frac);
  for (const auto& c : coeff) {
    auto [u, i] = edges_from_coefficients(c);
    uni.edge_sets.push_back(std::move(u));
    inter.edge_sets.push_back(std::move(i));
  }
  check_path_result(uni);
  check_path_result(inter);
  return {std::move(uni), std::move(inter)};
}

DataMatrix sequential_bootstrap(const DataMatrix& x, Rng& rng) {
  const int n = x.n();
  if (n < 1) throw ParameterError("sequential_bootstrap: empty sample");
  std::vector<char> seen(n, 0);
  std::vector<int> keep;
  keep.reserve(n);
  for (int draw = 0; draw < n; ++draw) {
    int idx = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    if (!seen[idx]) {
      seen[idx] = 1;
      keep.push_back(idx);
    }
  }
  DataMatrix out;
  out.x.resize(static_cast<Eigen::Index>(keep.size()), x.p());
  for (std::size_t r = 0; r < keep.size(); ++r) out.x.row(r) = x.x.row(keep[r]);
  out.normalization = x.normalization;
  return out;
}

EdgeSet edges_from_freq(const FrequencyMatrix& freq, double t) {
  const int p = freq.p();
  EdgeSet es(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (std::max(freq.f(i, j), freq.f(j, i)) > t) es.add(i + 1, j + 1);
  return es;
}

GtrexResult gtrex(const DataMatrix& x, int b, double t, const trex::TrexConfig& cfg,
                  std::uint64_t seed, int jobs) {
  if (b < 1) throw ParameterError("gtrex: b must be >= 1");
  if (t < 0.0 || t > 1.0) throw ParameterError("gtrex: t must lie in [0, 1]");
  const int p = x.p();

  // One task per (node, bootstrap); each consumes its own substream and
  // reports the selected support, so accumulation order is fixed afterwards.
  const int n_tasks = p * b;
  std::vector<std::vector<int>> supports(n_tasks);
  std::vector<char> failed(n_tasks, 0);
  parallel_for(n_tasks, jobs, [&](int task) {
    const int k = task / b + 1;   // 1-based node
    const int l = task % b + 1;   // 1-based bootstrap index
    Rng stream(fold_seed(seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l)}));
    try {
      DataMatrix xb = sequential_bootstrap(x, stream);
      Eigen::VectorXd beta = trex::solve_trex_node(xb, k, cfg);
      for (int m = 0; m < p; ++m)
        if (std::abs(beta(m)) > kSupportThreshold) supports[task].push_back(m);
    } catch (const std::exception&) {
      failed[task] = 1;
    }
  });

  for (int k = 0; k < p; ++k) {
    int node_failures = 0;
    for (int l = 0; l < b; ++l) node_failures += failed[k * b + l];
    if (node_failures * 2 > b)
      throw SolverError("gtrex: node " + std::to_string(k + 1) + " failed " +
                        std::to_string(node_failures) + " of " + std::to_string(b) +
                        " bootstrap solves");
  }

  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(p, p);
  for (int task = 0; task < n_tasks; ++task) {
    const int k = task / b;
    for (int m : supports[task]) counts(k, m) += 1;
  }
  FrequencyMatrix freq{counts.cast<double>() / static_cast<double>(b), b};
  EdgeSet edges = edges_from_freq(freq, t);
  return GtrexResult{std::move(freq), std::move(edges), t, b};
}

PathResult gtrex_threshold_path(const FrequencyMatrix& freq,
                                const std::vector<double>& thresholds) {
  PathResult out{thresholds, {}, "gtrex"};
  out.edge_sets.reserve(thresholds.size());
  for (double t : thresholds) out.edge_sets.push_back(edges_from_freq(freq, t));
  check_path_result(out);
  return out;
}

Eigen::MatrixXd sample_covariance(const DataMatrix& x) {
  return (x.x.transpose() * x.x) / static_cast<double>(x.n());
}

namespace {

// Support of the off-diagonal of a symmetric matrix at the shared threshold.
EdgeSet edges_from_matrix(const Eigen::MatrixXd& m) {
  const int p = static_cast<int>(m.rows());
  EdgeSet es(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (std::abs(m(i, j)) > kSupportThreshold) es.add(i + 1, j + 1);
  return es;
}

// Recovers theta from the blockwise state: per column j,
//   theta_jj = 1 / (w_jj - w_12' beta_j),  theta_{-j,j} = -theta_jj beta_j.
Eigen::MatrixXd recover_theta(const Eigen::MatrixXd& w, const Eigen::MatrixXd& b) {
  const Eigen::Index p = w.rows();
  Eigen::MatrixXd theta(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& beta = b.col(j);
    double tjj = 1.0 / (w(j, j) - w.col(j).dot(beta));  // beta(j) == 0
    theta.col(j) = -tjj * beta;
    theta(j, j) = tjj;
  }
  return (theta + theta.transpose()) / 2.0;
}

// Max stationarity violation of the penalized log-det objective at theta,
// measured through w_true = theta^{-1}.
double glasso_kkt(const Eigen::MatrixXd& s, const Eigen::MatrixXd& theta, double lambda,
                  bool penalize_diagonal) {
  Eigen::LLT<Eigen::MatrixXd> llt(theta);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd w = llt.solve(Eigen::MatrixXd::Identity(theta.rows(), theta.cols()));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < theta.rows(); ++i) {
    for (Eigen::Index j = 0; j < theta.cols(); ++j) {
      double diff = w(i, j) - s(i, j);
      double v;
      if (i == j) {
        v = penalize_diagonal ? std::abs(diff - lambda) : std::abs(diff);
      } else if (std::abs(theta(i, j)) > kSupportThreshold) {
        v = std::abs(diff - lambda * (theta(i, j) > 0 ? 1.0 : -1.0));
      } else {
        v = std::max(0.0, std::abs(diff) - lambda);
      }
      worst = std::max(worst, v);
    }
  }
  return worst;
}

struct GlassoState {
  Eigen::MatrixXd w;  // working covariance estimate
  Eigen::MatrixXd b;  // per-column lasso coefficients, zero diagonal
};

GlassoResult glasso_on_state(const Eigen::MatrixXd& s, double lambda, double tol,
                             bool penalize_diagonal, int max_outer_sweeps, GlassoState& state) {
  const Eigen::Index p = s.rows();
  if (p != s.cols()) throw ParameterError("glasso: sample covariance must be square");
  if (lambda < 0.0) throw ParameterError("glasso: lambda must be >= 0");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw ParameterError("glasso: sample covariance must be symmetric");

  if (lambda == 0.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success)
      throw NumericError("glasso: sample covariance not positive definite at lambda = 0");
  }

  const double diag_shift = penalize_diagonal ? lambda : 0.0;
  state.w.diagonal() = s.diagonal().array() + diag_shift;

  double kkt = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd theta;
  for (int sweep = 1; sweep <= max_outer_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < p; ++j) {
      Eigen::VectorXd beta = state.b.col(j);
      // Inner problem on W11: the skipped index keeps row/column j inert.
      auto res = lasso::cd_gram(state.w, s.col(j), 2.0 * lambda, beta, static_cast<int>(j),
                                tol, lasso::kDefaultMaxSweeps);
      if (!res.converged)
        throw ConvergenceError("glasso: inner lasso stalled on column " + std::to_string(j + 1),
                               res.kkt_residual);
      state.b.col(j) = beta;
      Eigen::VectorXd w12 = state.w * beta;  // uses only W11 since beta(j) = 0
      double wjj = state.w(j, j);
      state.w.col(j) = w12;
      state.w.row(j) = w12.transpose();
      state.w(j, j) = wjj;
    }
    theta = recover_theta(state.w, state.b);
    kkt = glasso_kkt(s, theta, lambda, penalize_diagonal);
    if (kkt <= tol) {
      Eigen::LLT<Eigen::MatrixXd> llt(theta);
      if (llt.info() != Eigen::Success)
        throw NumericError("glasso: estimate not positive definite");
      EdgeSet edges = edges_from_matrix(theta);
      return GlassoResult{std::move(theta), std::move(edges), lambda, kkt, sweep};
    }
  }
  throw ConvergenceError("glasso: outer sweep cap " + std::to_string(max_outer_sweeps) +
                             " exceeded",
                         kkt);
}

}  // namespace

GlassoResult glasso(const Eigen::MatrixXd& sample_cov, double lambda, double tol,
                    bool penalize_diagonal, int max_outer_sweeps) {
  GlassoState state{sample_cov, Eigen::MatrixXd::Zero(sample_cov.rows(), sample_cov.cols())};
  auto result = glasso_on_state(sample_cov, lambda, tol, penalize_diagonal, max_outer_sweeps,
                                state);
  // Rebuild edges from the final (symmetrized) estimate.
  result.edges = edges_from_matrix(result.theta_hat);
  return result;
}

PathResult glasso_path(const DataMatrix& x, const std::vector<double>& fractions, double tol,
                       bool penalize_diagonal) {
  if (fractions.empty()) throw ParameterError("glasso_path: empty grid");
  Eigen::MatrixXd s = sample_covariance(x);
  const Eigen::Index p = s.rows();
  double lam_max = 0.0;
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      if (i != j) lam_max = std::max(lam_max, std::abs(s(i, j)));

  PathResult out{fractions, {}, "glasso"};
  out.edge_sets.assign(fractions.size(), EdgeSet(static_cast<int>(p)));
  GlassoState state{s, Eigen::MatrixXd::Zero(p, p)};
  for (std::size_t idx = fractions.size(); idx-- > 0;) {
    if (fractions[idx] <= 0.0 || fractions[idx] > 1.0)
      throw ParameterError("glasso_path: fractions must lie in (0, 1]");
    auto res = glasso_on_state(s, fractions[idx] * lam_max, tol, penalize_diagonal, 200, state);
    out.edge_sets[idx] = std::move(res.edges);
  }
  check_path_result(out);
  return out;
}

}  // namespace gtrex::estimators
