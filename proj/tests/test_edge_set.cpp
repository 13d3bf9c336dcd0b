#include <doctest.h>

#include "gtrex/csv.hpp"
#include "gtrex/edge_set.hpp"
#include "gtrex/errors.hpp"
#include "gtrex/rng.hpp"
#include "gtrex/types.hpp"

using namespace gtrex;

TEST_SUITE("edge_set") {

TEST_CASE("edges are canonical and membership ignores order") {
  EdgeSet es(5);
  es.add(4, 2);
  CHECK(es.contains(2, 4));
  CHECK(es.contains(4, 2));
  CHECK_FALSE(es.contains(1, 2));
  CHECK(es.pairs().count({2, 4}) == 1);
  CHECK(es.pairs().count({4, 2}) == 0);
  es.add(2, 4);  // duplicate, set semantics
  CHECK(es.size() == 1);
}

TEST_CASE("self-loops and bad indices are rejected") {
  EdgeSet es(3);
  CHECK_THROWS_AS(es.add(2, 2), ParameterError);
  CHECK_THROWS_AS(es.add(0, 1), ParameterError);
  CHECK_THROWS_AS(es.add(1, 4), ParameterError);
  CHECK_THROWS_AS(EdgeSet(1), ParameterError);
}

TEST_CASE("edge count never exceeds p(p-1)/2") {
  EdgeSet es(4);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) es.add(i, j);
  CHECK(es.size() == es.max_edges());
  CHECK(es.size() == 6);
}

TEST_CASE("serialization round-trips bit-exactly") {
  EdgeSet es(6);
  es.add(3, 1);
  es.add(5, 6);
  es.add(2, 4);
  std::string text = es.serialize();
  CHECK(text == "p 6 k 3\n1 3\n2 4\n5 6\n");
  EdgeSet back = EdgeSet::parse_string(text);
  CHECK(back == es);
  CHECK(back.serialize() == text);
}

TEST_CASE("random edge sets round-trip") {
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    int p = 2 + static_cast<int>(rng.uniform_below(30));
    EdgeSet es(p);
    long long want = static_cast<long long>(rng.uniform_below(es.max_edges() + 1));
    while (es.size() < want) {
      int i = 1 + static_cast<int>(rng.uniform_below(p));
      int j = 1 + static_cast<int>(rng.uniform_below(p));
      if (i != j) es.add(i, j);
    }
    EdgeSet back = EdgeSet::parse_string(es.serialize());
    CHECK(back == es);
    CHECK(back.serialize() == es.serialize());
  }
}

TEST_CASE("malformed edge files are rejected") {
  CHECK_THROWS_AS(EdgeSet::parse_string("q 3 k 0\n"), DataError);
  CHECK_THROWS_AS(EdgeSet::parse_string("p 3 k 2\n1 2\n"), DataError);
  CHECK_THROWS_AS(EdgeSet::parse_string("p 3 k 1\n2 1\n"), DataError);   // not canonical
  CHECK_THROWS_AS(EdgeSet::parse_string("p 3 k 2\n1 2\n1 2\n"), DataError);  // duplicate
}

TEST_CASE("data matrix normalization invariants are enforced") {
  DataMatrix dm;
  dm.x.resize(2, 2);
  dm.x << 3, 0, 0, 4;
  dm.normalization = Normalization::none;
  CHECK_NOTHROW(check_data_matrix(dm));
  dm.normalization = Normalization::columns_sqrt_n;
  CHECK_THROWS_AS(check_data_matrix(dm), DataError);
}

TEST_CASE("frequency matrix invariants") {
  FrequencyMatrix fm;
  fm.b = 4;
  fm.f = Eigen::MatrixXd::Zero(3, 3);
  fm.f(0, 1) = 0.75;
  fm.f(1, 0) = 0.25;
  CHECK_NOTHROW(check_frequency_matrix(fm));
  fm.f(0, 2) = 0.3;  // not a multiple of 1/4
  CHECK_THROWS(check_frequency_matrix(fm));
  fm.f(0, 2) = 0.0;
  fm.f(2, 2) = 0.25;  // nonzero diagonal
  CHECK_THROWS(check_frequency_matrix(fm));
}

TEST_CASE("path result grid must be strictly increasing and aligned") {
  PathResult pr;
  pr.grid = {0.1, 0.2};
  pr.edge_sets = {EdgeSet(3), EdgeSet(3)};
  CHECK_NOTHROW(check_path_result(pr));
  pr.grid = {0.2, 0.2};
  CHECK_THROWS_AS(check_path_result(pr), ParameterError);
  pr.grid = {0.1};
  CHECK_THROWS_AS(check_path_result(pr), ParameterError);
}

TEST_CASE("edge set file io") {
  EdgeSet es(4);
  es.add(1, 2);
  es.add(3, 4);
  std::string path = "edge_set_io_test.txt";
  write_edge_set_file(path, es);
  CHECK(read_edge_set_file(path) == es);
  CHECK(read_text_file(path) == es.serialize());
}

}  // TEST_SUITE
