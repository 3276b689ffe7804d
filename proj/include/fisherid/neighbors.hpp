#pragma once

#include "fisherid/types.hpp"

namespace fisherid {

struct NeighborGraph {
  // indices(i, j): the j-th nearest neighbor of point i (self excluded),
  // distances(i, j): the matching Euclidean distance, ascending within a row.
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> indices;
  DataMatrix distances;
};

// Exact k-nearest-neighbor graph, brute force over all pairs. Distance ties
// break by ascending point index. Requires 1 <= k <= N-1.
NeighborGraph knn(const DataMatrix& data, Index k, int threads = 1);

}  // namespace fisherid
