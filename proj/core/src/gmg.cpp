#include "gtrex/gmg.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gtrex/errors.hpp"

namespace gtrex::gmg {

std::string to_string(Topology t) {
  switch (t) {
    case Topology::single_hub: return "single_hub";
    case Topology::double_hub: return "double_hub";
    case Topology::four_hub: return "four_hub";
    case Topology::four_niches: return "four_niches";
    case Topology::erdos_renyi: return "erdos_renyi";
    case Topology::scale_free: return "scale_free";
  }
  return "single_hub";
}

Topology topology_from_string(const std::string& name) {
  if (name == "single_hub") return Topology::single_hub;
  if (name == "double_hub") return Topology::double_hub;
  if (name == "four_hub") return Topology::four_hub;
  if (name == "four_niches") return Topology::four_niches;
  if (name == "erdos_renyi") return Topology::erdos_renyi;
  if (name == "scale_free") return Topology::scale_free;
  throw ParameterError("unknown topology: " + name);
}

namespace {

void validate_spec(const TopologySpec& spec) {
  if (spec.p < 2) throw ParameterError("topology: p must be >= 2");
  if (spec.kind == Topology::double_hub && spec.p % 2 != 0)
    throw ParameterError("double_hub requires even p, got " + std::to_string(spec.p));
  if ((spec.kind == Topology::four_hub || spec.kind == Topology::four_niches) && spec.p % 4 != 0)
    throw ParameterError(to_string(spec.kind) + " requires p divisible by 4, got " +
                         std::to_string(spec.p));
  if (spec.kind == Topology::four_niches && (spec.niches_blocks < 3 || spec.niches_blocks > 4))
    throw ParameterError("four_niches: niches_blocks must be 3 or 4");
  long long max_k = static_cast<long long>(spec.p) * (spec.p - 1) / 2;
  if (spec.k < 0 || spec.k > max_k)
    throw ParameterError("topology: k = " + std::to_string(spec.k) + " exceeds p(p-1)/2 = " +
                         std::to_string(max_k));
  long long skel = skeleton_size(spec);
  if (spec.k < skel)
    throw ParameterError("topology: k = " + std::to_string(spec.k) +
                         " below the skeleton size " + std::to_string(skel) + " of " +
                         to_string(spec.kind));
}

// Star centered at `hub` over `first`..`last` inclusive (all 1-based).
void add_star(EdgeSet& es, int hub, int first, int last) {
  for (int j = first; j <= last; ++j) es.add(hub, j);
}

// One uniformly random unordered pair of distinct nodes in [1, p].
std::pair<int, int> random_pair(int p, Rng& rng) {
  for (;;) {
    int i = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(p)));
    int j = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(p)));
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    return {i, j};
  }
}

// Inserts edges uniformly at random (without replacement, rejection sampled
// against current membership) until exactly k edges are present.
void fill_uniform(EdgeSet& es, long long k, Rng& rng) {
  while (es.size() < k) {
    auto [i, j] = random_pair(es.p(), rng);
    if (!es.contains(i, j)) es.add(i, j);
  }
}

// Preferential attachment: E = {e12}, then each node i = 3..p attaches to a
// previous node j with probability proportional to the current degree of j.
void add_preferential_attachment(EdgeSet& es, int p, Rng& rng) {
  std::vector<long long> degree(p + 1, 0);
  es.add(1, 2);
  degree[1] = degree[2] = 1;
  long long total_degree = 2;
  for (int i = 3; i <= p; ++i) {
    std::uint64_t u = rng.uniform_below(static_cast<std::uint64_t>(total_degree));
    long long acc = 0;
    int target = 1;
    for (int j = 1; j < i; ++j) {
      acc += degree[j];
      if (static_cast<long long>(u) < acc) {
        target = j;
        break;
      }
    }
    es.add(i, target);
    degree[i] += 1;
    degree[target] += 1;
    total_degree += 2;
  }
}

// p/4-1 distinct edges chosen uniformly among the pairs of one block.
void add_niche(EdgeSet& es, int block_first, int block_size, Rng& rng) {
  long long want = block_size - 1;
  long long have = 0;
  while (have < want) {
    int a = block_first + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(block_size)));
    int b = block_first + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(block_size)));
    if (a == b) continue;
    if (!es.contains(a, b)) {
      es.add(a, b);
      ++have;
    }
  }
}

}  // namespace

long long skeleton_size(const TopologySpec& spec) {
  const int p = spec.p;
  switch (spec.kind) {
    case Topology::single_hub: return p - 1;
    case Topology::double_hub: return p - 2;
    case Topology::four_hub: return p - 4;
    case Topology::four_niches:
      return static_cast<long long>(spec.niches_blocks) * (p / 4 - 1);
    case Topology::erdos_renyi: return 0;
    case Topology::scale_free: return p - 1;
  }
  return 0;
}

EdgeSet generate_topology(const TopologySpec& spec, Rng& rng, EdgeSet* skeleton_out) {
  validate_spec(spec);
  const int p = spec.p;
  EdgeSet es(p);
  switch (spec.kind) {
    case Topology::single_hub:
      add_star(es, 1, 2, p);
      break;
    case Topology::double_hub:
      add_star(es, 1, 2, p / 2);
      add_star(es, p / 2 + 1, p / 2 + 2, p);
      break;
    case Topology::four_hub:
      add_star(es, 1, 2, p / 4);
      add_star(es, p / 4 + 1, p / 4 + 2, p / 2);
      add_star(es, p / 2 + 1, p / 2 + 2, 3 * p / 4);
      add_star(es, 3 * p / 4 + 1, 3 * p / 4 + 2, p);
      break;
    case Topology::four_niches:
      for (int b = 0; b < spec.niches_blocks; ++b) add_niche(es, b * (p / 4) + 1, p / 4, rng);
      break;
    case Topology::erdos_renyi:
      break;
    case Topology::scale_free:
      add_preferential_attachment(es, p, rng);
      break;
  }
  if (skeleton_out) *skeleton_out = es;
  fill_uniform(es, spec.k, rng);
  return es;
}

EdgeSet generate_topology(const TopologySpec& spec) {
  Rng rng(spec.seed);
  return generate_topology(spec, rng);
}

PrecisionModel build_precision_from_offdiag(const Eigen::MatrixXd& a, const EdgeSet& edges,
                                            double a_min, double a_max, double cond_target) {
  if (cond_target <= 1.0) throw ParameterError("build_precision: cond_target must be > 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericError("build_precision: eigensolver failed");
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();

  PrecisionModel pm{a, edges, 0.0, cond_target, a_min, a_max, false};
  if (hi - lo <= 1e-12) {
    // Zero (or constant-spectrum) off-diagonal part: the condition-number
    // equation has no solution, fall back to the identity.
    pm.diag_value = 1.0;
    pm.degenerate = true;
  } else {
    pm.diag_value = (hi - cond_target * lo) / (cond_target - 1.0);
    if (lo + pm.diag_value <= 0.0)
      throw ParameterError("build_precision: diagonal shift does not reach positive definiteness");
  }
  pm.theta.diagonal().setConstant(pm.diag_value);
  return pm;
}

PrecisionModel build_precision(const EdgeSet& edges, double a_min, double a_max,
                               double cond_target, Rng& rng) {
  if (!(a_max > a_min && a_min > 0.0))
    throw ParameterError("build_precision: need a_max > a_min > 0");
  const int p = edges.p();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (const auto& [i, j] : edges.pairs()) {
    // Uniform over [-a_max,-a_min] u [a_min,a_max]: both intervals have equal
    // length, so a fair sign times a uniform magnitude.
    double v = rng.sign() * rng.uniform_real(a_min, a_max);
    a(i - 1, j - 1) = v;
    a(j - 1, i - 1) = v;
  }
  return build_precision_from_offdiag(a, edges, a_min, a_max, cond_target);
}

Eigen::MatrixXd sample_gaussian_theta(const Eigen::MatrixXd& theta, int n, Rng& rng) {
  if (n < 1) throw ParameterError("sample_gaussian: n must be >= 1");
  Eigen::LLT<Eigen::MatrixXd> llt(theta);
  if (llt.info() != Eigen::Success)
    throw NumericError("sample_gaussian: precision matrix is not positive definite");
  const auto p = theta.rows();
  // theta = M M^T  =>  L := M^{-T} satisfies L L^T = theta^{-1}.
  Eigen::MatrixXd upper = llt.matrixU();
  Eigen::MatrixXd l = upper.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd z(n, p);
  for (int i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) z(i, j) = rng.normal();
  return z * l.transpose();
}

DataMatrix sample_gaussian(const PrecisionModel& model, int n, Rng& rng) {
  return DataMatrix{sample_gaussian_theta(model.theta, n, rng), Normalization::none};
}

DataMatrix normalize(const DataMatrix& x, Normalization mode) {
  DataMatrix out = x;
  const double root_n = std::sqrt(static_cast<double>(x.n()));
  if (mode == Normalization::columns_sqrt_n) {
    for (int j = 0; j < out.p(); ++j) {
      double norm = out.x.col(j).norm();
      if (norm == 0.0)
        throw DataError("normalize: column " + std::to_string(j + 1) + " is identically zero");
      out.x.col(j) *= root_n / norm;
    }
  } else if (mode == Normalization::rows_sqrt_n) {
    for (int i = 0; i < out.n(); ++i) {
      double norm = out.x.row(i).norm();
      if (norm == 0.0)
        throw DataError("normalize: row " + std::to_string(i + 1) + " is identically zero");
      out.x.row(i) *= root_n / norm;
    }
  }
  out.normalization = mode;
  return out;
}

}  // namespace gtrex::gmg
