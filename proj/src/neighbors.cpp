#include "fisherid/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fisherid/parallel.hpp"

namespace fisherid {

namespace {

double squared_distance(const double* a, const double* b, Index dim) {
  double acc0 = 0.0, acc1 = 0.0;
  Index d = 0;
  for (; d + 2 <= dim; d += 2) {
    const double d0 = a[d] - b[d];
    const double d1 = a[d + 1] - b[d + 1];
    acc0 += d0 * d0;
    acc1 += d1 * d1;
  }
  if (d < dim) {
    const double d0 = a[d] - b[d];
    acc0 += d0 * d0;
  }
  return acc0 + acc1;
}

}  // namespace

NeighborGraph knn(const DataMatrix& data, Index k, int threads) {
  validate_data(data);
  const Index n = data.rows();
  const Index dim = data.cols();
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("knn: k must lie in [1, N-1]");
  }

  NeighborGraph graph;
  graph.indices.resize(n, k);
  graph.distances.resize(n, k);

  parallel_for(n, threads, [&](Index i) {
    const double* self = data.data() + i * dim;
    std::vector<std::pair<double, Index>> candidates;
    candidates.reserve(static_cast<std::size_t>(n - 1));
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      candidates.emplace_back(squared_distance(self, data.data() + j * dim, dim), j);
    }
    // (distance, index) lexicographic order realizes the index tie-break.
    std::nth_element(candidates.begin(), candidates.begin() + (k - 1), candidates.end());
    std::sort(candidates.begin(), candidates.begin() + k);
    for (Index j = 0; j < k; ++j) {
      graph.indices(i, j) = candidates[static_cast<std::size_t>(j)].second;
      graph.distances(i, j) = std::sqrt(candidates[static_cast<std::size_t>(j)].first);
    }
  });
  return graph;
}

}  // namespace fisherid
