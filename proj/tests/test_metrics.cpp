#include <doctest.h>

#include "gtrex/errors.hpp"
#include "gtrex/metrics.hpp"
#include "gtrex/rng.hpp"

using namespace gtrex;
namespace met = gtrex::metrics;

namespace {

EdgeSet random_edges(int p, Rng& rng) {
  EdgeSet es(p);
  long long want = static_cast<long long>(rng.uniform_below(es.max_edges() + 1));
  while (es.size() < want) {
    int i = 1 + static_cast<int>(rng.uniform_below(p));
    int j = 1 + static_cast<int>(rng.uniform_below(p));
    if (i != j) es.add(i, j);
  }
  return es;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("hamming basics") {
  EdgeSet a(4), b(4);
  a.add(1, 2);
  b.add(1, 3);
  CHECK(met::hamming(a, a) == 0);
  CHECK(met::hamming(a, b) == 2);  // one false positive + one false negative

  EdgeSet empty(4), truth(4);
  truth.add(1, 2);
  truth.add(2, 3);
  truth.add(3, 4);
  CHECK(met::hamming(empty, truth) == truth.size());
  CHECK_THROWS_AS(met::hamming(EdgeSet(3), EdgeSet(4)), ParameterError);
}

TEST_CASE("precision and recall basics") {
  EdgeSet a(4);
  a.add(1, 2);
  a.add(3, 4);
  auto s = met::precision_recall(a, a);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  CHECK_FALSE(s.degenerate_precision);
  CHECK(s.hamming == 0);

  EdgeSet empty(4);
  auto s2 = met::precision_recall(empty, a);
  CHECK(s2.precision == 1.0);
  CHECK(s2.degenerate_precision);
  CHECK(s2.recall == 0.0);
  CHECK(s2.fn == 2);

  auto s3 = met::precision_recall(a, empty);
  CHECK(s3.recall == 1.0);
  CHECK(s3.degenerate_recall);
  CHECK(s3.precision == 0.0);
}

TEST_CASE("hamming is a metric and decomposes as fp + fn") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    int p = 3 + static_cast<int>(rng.uniform_below(10));
    EdgeSet a = random_edges(p, rng);
    EdgeSet b = random_edges(p, rng);
    EdgeSet c = random_edges(p, rng);
    long long ab = met::hamming(a, b);
    CHECK(ab == met::hamming(b, a));
    CHECK(met::hamming(a, a) == 0);
    if (ab == 0) CHECK(a == b);
    CHECK(ab <= met::hamming(a, c) + met::hamming(c, b));

    auto s = met::precision_recall(a, b);
    CHECK(s.hamming == ab);
    CHECK(s.hamming == s.fp + s.fn);
    CHECK(s.hamming == a.size() + b.size() - 2 * s.tp);
  }
}

TEST_CASE("oracle select finds the exact match") {
  EdgeSet truth(4);
  truth.add(1, 2);
  truth.add(2, 3);
  PathResult path;
  path.method_tag = "ns_union";
  path.grid = {0.1, 0.2, 0.3};
  EdgeSet e1(4);
  e1.add(1, 2);
  EdgeSet e3(4);
  path.edge_sets = {e1, truth, e3};
  auto [idx, score] = met::oracle_select(path, truth);
  CHECK(idx == 1);
  CHECK(score.hamming == 0);
}

TEST_CASE("oracle ties break toward the largest tuning value") {
  EdgeSet truth(4);
  truth.add(1, 2);
  EdgeSet est(4);
  est.add(3, 4);
  PathResult path;
  path.grid = {0.1, 0.5, 0.9};
  path.edge_sets = {est, est, est};
  auto [idx, score] = met::oracle_select(path, truth);
  CHECK(idx == 2);
  CHECK(score.hamming == 2);
}

TEST_CASE("oracle minimum matches an exhaustive scan") {
  Rng rng(47);
  EdgeSet truth = random_edges(6, rng);
  PathResult path;
  for (int i = 0; i < 20; ++i) {
    path.grid.push_back((i + 1) / 20.0);
    path.edge_sets.push_back(random_edges(6, rng));
  }
  auto [idx, score] = met::oracle_select(path, truth);
  long long best = met::hamming(path.edge_sets[0], truth);
  for (const auto& es : path.edge_sets) best = std::min(best, met::hamming(es, truth));
  CHECK(score.hamming == best);
  for (const auto& es : path.edge_sets) CHECK(score.hamming <= met::hamming(es, truth));
}

}  // TEST_SUITE
