#ifndef GTREX_GMG_HPP
#define GTREX_GMG_HPP

#include <cstdint>
#include <string>

#include "gtrex/rng.hpp"
#include "gtrex/types.hpp"

namespace gtrex::gmg {

/// Graph topologies: four hub-structured families, random intra-block
/// communities, a uniform random graph, and preferential attachment.
enum class Topology {
  single_hub,
  double_hub,
  four_hub,
  four_niches,
  erdos_renyi,
  scale_free,
};

std::string to_string(Topology t);
Topology topology_from_string(const std::string& name);

struct TopologySpec {
  Topology kind = Topology::single_hub;
  int p = 0;
  long long k = 0;
  std::uint64_t seed = 0;
  /// Number of seeded blocks for four_niches; 4 by default, 3 selects the
  /// variant that leaves the last block unseeded.
  int niches_blocks = 4;
};

/// Smallest k admissible for the spec (the size of the deterministic or
/// randomly seeded skeleton of the chosen kind).
long long skeleton_size(const TopologySpec& spec);

/// Builds the topology: lays down the kind's skeleton, then fills with edges
/// drawn uniformly at random without replacement among absent pairs until
/// exactly k edges are present. If skeleton_out is given it receives the
/// skeleton alone (the random fill is always a superset of it).
EdgeSet generate_topology(const TopologySpec& spec, Rng& rng, EdgeSet* skeleton_out = nullptr);

/// Convenience overload seeding the stream from spec.seed.
EdgeSet generate_topology(const TopologySpec& spec);

/// Given the support, draws each edge weight uniformly from
/// [-a_max,-a_min] u [a_min,a_max], places it symmetrically, and sets every
/// diagonal entry to the common value d = (l_max - c*l_min)/(c - 1) computed
/// from the extreme eigenvalues of the off-diagonal matrix so that
/// cond(theta) = cond_target. An empty support degenerates to theta = I.
PrecisionModel build_precision(const EdgeSet& edges, double a_min, double a_max,
                               double cond_target, Rng& rng);

/// Diagonal completion for an explicit off-diagonal matrix; exposed so the
/// condition-number arithmetic can be exercised on hand-built inputs.
PrecisionModel build_precision_from_offdiag(const Eigen::MatrixXd& a, const EdgeSet& edges,
                                            double a_min, double a_max, double cond_target);

/// n i.i.d. rows from N_p(0, theta^{-1}); each row is L*z for a factor
/// L L^T = theta^{-1} and z standard normal. Output normalization is none.
DataMatrix sample_gaussian(const PrecisionModel& model, int n, Rng& rng);

/// Sampling core on a raw precision matrix (also covers the 1x1 case).
Eigen::MatrixXd sample_gaussian_theta(const Eigen::MatrixXd& theta, int n, Rng& rng);

/// Rescales columns (or rows) to Euclidean norm sqrt(n). A zero column/row is
/// a data error naming the 1-based index.
DataMatrix normalize(const DataMatrix& x, Normalization mode);

}  // namespace gtrex::gmg

#endif  // GTREX_GMG_HPP
