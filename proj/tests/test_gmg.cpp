#include <cmath>
#include <set>

#include <doctest.h>

#include "gtrex/errors.hpp"
#include "gtrex/gmg.hpp"
#include "oracles.hpp"

using namespace gtrex;
using gmg::Topology;
using gmg::TopologySpec;

TEST_SUITE("gmg") {

TEST_CASE("single hub with k = p-1 is exactly the star") {
  EdgeSet es = gmg::generate_topology({Topology::single_hub, 5, 4, 99});
  EdgeSet star(5);
  star.add(1, 2);
  star.add(1, 3);
  star.add(1, 4);
  star.add(1, 5);
  CHECK(es == star);
}

TEST_CASE("erdos-renyi with k = max forces the complete graph") {
  EdgeSet es = gmg::generate_topology({Topology::erdos_renyi, 3, 3, 7});
  CHECK(es.size() == 3);
  CHECK(es.contains(1, 2));
  CHECK(es.contains(1, 3));
  CHECK(es.contains(2, 3));
}

TEST_CASE("scale-free p=3 k=2 attaches node 3 to either hub with probability 1/2") {
  // Exact chain: E = {e12}, degrees (1,1), so P(e13) = P(e23) = 1/2 and the
  // fill step never runs.
  int count_e13 = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    EdgeSet es = gmg::generate_topology({Topology::scale_free, 3, 2, static_cast<std::uint64_t>(s)});
    CHECK(es.size() == 2);
    CHECK(es.contains(1, 2));
    bool e13 = es.contains(1, 3);
    bool e23 = es.contains(2, 3);
    CHECK(e13 != e23);
    if (e13) ++count_e13;
  }
  double freq = static_cast<double>(count_e13) / trials;
  CHECK(freq == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +/- 0.02
}

TEST_CASE("every topology yields exactly k edges containing its skeleton") {
  for (Topology kind : {Topology::single_hub, Topology::double_hub, Topology::four_hub,
                        Topology::four_niches, Topology::erdos_renyi, Topology::scale_free}) {
    for (int p : {8, 20}) {
      for (long long k : {static_cast<long long>(p - 1), static_cast<long long>(2 * (p - 1))}) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
          TopologySpec spec{kind, p, k, seed};
          Rng rng(seed);
          EdgeSet skeleton(p);
          EdgeSet es = gmg::generate_topology(spec, rng, &skeleton);
          CHECK(es.size() == k);
          CHECK(skeleton.size() == gmg::skeleton_size(spec));
          for (const auto& [i, j] : skeleton.pairs()) CHECK(es.contains(i, j));
        }
      }
    }
  }
}

TEST_CASE("scale-free skeleton is a spanning tree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EdgeSet es = gmg::generate_topology({Topology::scale_free, 20, 19, seed});
    CHECK(es.size() == 19);  // k = p-1: the preferential-attachment graph alone
    CHECK(oracles::connected(es));
  }
}

TEST_CASE("four-niches skeleton stays within its blocks") {
  // p = 8: blocks of 2 nodes, one edge each; k = skeleton size so no fill.
  TopologySpec spec{Topology::four_niches, 8, 4, 3};
  EdgeSet es = gmg::generate_topology(spec);
  CHECK(es.size() == 4);
  for (const auto& [i, j] : es.pairs()) CHECK((i - 1) / 2 == (j - 1) / 2);

  spec.niches_blocks = 3;
  spec.k = 3;
  EdgeSet es3 = gmg::generate_topology(spec);
  CHECK(es3.size() == 3);
  for (const auto& [i, j] : es3.pairs()) {
    CHECK((i - 1) / 2 == (j - 1) / 2);
    CHECK(j <= 6);  // literal reading: the fourth block is never seeded
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(gmg::generate_topology({Topology::double_hub, 7, 6, 0}), ParameterError);
  CHECK_THROWS_AS(gmg::generate_topology({Topology::four_hub, 10, 9, 0}), ParameterError);
  CHECK_THROWS_AS(gmg::generate_topology({Topology::single_hub, 5, 3, 0}), ParameterError);
  CHECK_THROWS_AS(gmg::generate_topology({Topology::erdos_renyi, 3, 4, 0}), ParameterError);
}

TEST_CASE("diagonal completion hits the target condition number exactly") {
  // Path graph weights 1/sqrt(2) give the off-diagonal matrix eigenvalues
  // {-1, 0, 1}, so d = (1 - 100*(-1)) / 99 = 101/99.
  EdgeSet edges(3);
  edges.add(1, 2);
  edges.add(2, 3);
  const double w = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 1) = a(1, 0) = w;
  a(1, 2) = a(2, 1) = w;
  PrecisionModel pm = gmg::build_precision_from_offdiag(a, edges, 0.2, 1.0, 100.0);
  CHECK(pm.diag_value == doctest::Approx(101.0 / 99.0).epsilon(1e-12));
  CHECK((1.0 + pm.diag_value) / (-1.0 + pm.diag_value) == doctest::Approx(100.0).epsilon(1e-10));
  CHECK_NOTHROW(check_precision_model(pm));
}

TEST_CASE("empty edge set degenerates to the identity precision") {
  EdgeSet empty(3);
  Rng rng(5);
  PrecisionModel pm = gmg::build_precision(empty, 0.2, 1.0, 100.0, rng);
  CHECK(pm.degenerate);
  CHECK(pm.diag_value == 1.0);
  CHECK(pm.theta == Eigen::MatrixXd::Identity(3, 3));
  CHECK_NOTHROW(check_precision_model(pm));
}

TEST_CASE("generated precision models satisfy every invariant") {
  for (Topology kind : {Topology::single_hub, Topology::erdos_renyi, Topology::scale_free}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      EdgeSet es = gmg::generate_topology({kind, 20, 19, seed});
      Rng rng(fold_seed(seed, 1));
      PrecisionModel pm = gmg::build_precision(es, 0.2, 1.0, 100.0, rng);
      CHECK_FALSE(pm.degenerate);
      CHECK_NOTHROW(check_precision_model(pm));  // PD + cond within 1e-8 + support
    }
  }
}

TEST_CASE("build_precision rejects bad ranges") {
  EdgeSet es(3);
  es.add(1, 2);
  Rng rng(0);
  CHECK_THROWS_AS(gmg::build_precision(es, 1.0, 0.2, 100.0, rng), ParameterError);
  CHECK_THROWS_AS(gmg::build_precision(es, 0.2, 1.0, 0.5, rng), ParameterError);
}

TEST_CASE("identity precision sampling matches the law of large numbers") {
  EdgeSet empty(2);
  Rng rng(7);  // documented seed for this check
  PrecisionModel pm = gmg::build_precision(empty, 0.2, 1.0, 100.0, rng);
  Rng sample_rng(7);
  DataMatrix dm = gmg::sample_gaussian(pm, 100000, sample_rng);
  Eigen::MatrixXd cov = dm.x.transpose() * dm.x / 100000.0;
  CHECK(std::abs(cov(0, 0) - 1.0) < 0.02);
  CHECK(std::abs(cov(1, 1) - 1.0) < 0.02);
  CHECK(std::abs(cov(0, 1)) < 0.02);
}

TEST_CASE("univariate precision 4 gives variance 1/4") {
  Eigen::MatrixXd theta(1, 1);
  theta << 4.0;
  Rng rng(11);
  Eigen::MatrixXd x = gmg::sample_gaussian_theta(theta, 100000, rng);
  double var = x.squaredNorm() / 100000.0;
  CHECK(var == doctest::Approx(0.25).epsilon(0.04));  // 0.25 +/- 0.01
}

TEST_CASE("single draw is finite and unnormalized") {
  EdgeSet es = gmg::generate_topology({Topology::single_hub, 4, 3, 1});
  Rng rng(2);
  PrecisionModel pm = gmg::build_precision(es, 0.2, 1.0, 100.0, rng);
  Rng sample_rng(3);
  DataMatrix dm = gmg::sample_gaussian(pm, 1, sample_rng);
  CHECK(dm.n() == 1);
  CHECK(dm.x.allFinite());
  CHECK(dm.normalization == Normalization::none);
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  EdgeSet es = gmg::generate_topology({Topology::double_hub, 8, 7, 4});
  Rng rng(9);
  PrecisionModel pm = gmg::build_precision(es, 0.2, 1.0, 100.0, rng);
  Rng r1(42), r2(42);
  DataMatrix a = gmg::sample_gaussian(pm, 50, r1);
  DataMatrix b = gmg::sample_gaussian(pm, 50, r2);
  CHECK(a.x == b.x);
}

TEST_CASE("column normalization") {
  DataMatrix dm;
  dm.x.resize(2, 2);
  dm.x << 3, 0, 0, 4;
  DataMatrix out = gmg::normalize(dm, Normalization::columns_sqrt_n);
  const double r2 = std::sqrt(2.0);
  CHECK(out.x(0, 0) == doctest::Approx(r2).epsilon(1e-14));
  CHECK(out.x(1, 1) == doctest::Approx(r2).epsilon(1e-14));
  CHECK(out.x(0, 1) == 0.0);
  CHECK_NOTHROW(check_data_matrix(out));

  // Idempotence: renormalizing changes nothing beyond 1e-12.
  DataMatrix again = gmg::normalize(out, Normalization::columns_sqrt_n);
  CHECK((again.x - out.x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("row normalization") {
  DataMatrix dm;
  dm.x.resize(1, 2);
  dm.x << 1, 1;
  DataMatrix out = gmg::normalize(dm, Normalization::rows_sqrt_n);
  CHECK(out.x(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(out.x(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK_NOTHROW(check_data_matrix(out));
}

TEST_CASE("zero columns and rows are named in the error") {
  DataMatrix dm;
  dm.x = Eigen::MatrixXd::Zero(2, 3);
  dm.x(0, 0) = 1.0;
  dm.x(1, 2) = 2.0;
  try {
    gmg::normalize(dm, Normalization::columns_sqrt_n);
    CHECK(false);
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("column 2") != std::string::npos);
  }
}

}  // TEST_SUITE
