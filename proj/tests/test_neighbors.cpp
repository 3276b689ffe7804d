#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fisherid/neighbors.hpp"
#include "fisherid/synthdata.hpp"
#include "oracles.hpp"

using namespace fisherid;

TEST_SUITE("neighbors") {

TEST_CASE("three collinear points") {
  DataMatrix data(3, 1);
  data << 0, 1, 3;
  const NeighborGraph graph = knn(data, 1);
  CHECK(graph.indices(0, 0) == 1);
  CHECK(graph.indices(1, 0) == 0);
  CHECK(graph.indices(2, 0) == 1);
  CHECK(graph.distances(0, 0) == 1.0);
  CHECK(graph.distances(2, 0) == 2.0);
}

TEST_CASE("exact ties break by ascending index") {
  // Unit square corners: each corner has two neighbors at distance exactly 1.
  DataMatrix data(4, 2);
  data << 0, 0, 1, 0, 0, 1, 1, 1;
  const NeighborGraph graph = knn(data, 2);
  CHECK(graph.indices(0, 0) == 1);
  CHECK(graph.indices(0, 1) == 2);
  CHECK(graph.indices(3, 0) == 1);
  CHECK(graph.indices(3, 1) == 2);
  CHECK(graph.distances(0, 0) == 1.0);
  CHECK(graph.distances(0, 1) == 1.0);
}

TEST_CASE("matches the brute-force oracle on a seeded gaussian") {
  const DataMatrix data = sample_gaussian(10, 1000, 27);
  const Index k = 100;
  const NeighborGraph graph = knn(data, k);
  const auto reference = oracles::knn_bruteforce(data, k);
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < k; ++j) {
      CHECK(graph.indices(i, j) ==
            reference.indices[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      CHECK(graph.distances(i, j) ==
            doctest::Approx(
                reference.distances[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("rows are sorted and self-free") {
  const DataMatrix data = sample_ball(3, 300, 15);
  const NeighborGraph graph = knn(data, 20, 3);
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < 20; ++j) {
      CHECK(graph.indices(i, j) != i);
      if (j > 0) CHECK(graph.distances(i, j) >= graph.distances(i, j - 1));
    }
  }
}

TEST_CASE("permutation equivariance") {
  const DataMatrix data = sample_ball(4, 80, 44);
  const Index n = data.rows();
  // A fixed permutation: reverse.
  DataMatrix permuted(n, data.cols());
  for (Index i = 0; i < n; ++i) permuted.row(i) = data.row(n - 1 - i);

  const NeighborGraph a = knn(data, 5);
  const NeighborGraph b = knn(permuted, 5);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < 5; ++j) {
      CHECK(b.indices(n - 1 - i, j) == n - 1 - a.indices(i, j));
      CHECK(b.distances(n - 1 - i, j) == a.distances(i, j));
    }
  }
}

TEST_CASE("k out of range") {
  const DataMatrix data = sample_ball(2, 10, 0);
  CHECK_THROWS_AS(knn(data, 0), std::invalid_argument);
  CHECK_THROWS_AS(knn(data, 10), std::invalid_argument);
}

}  // TEST_SUITE
