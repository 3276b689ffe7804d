#pragma once

#include <cstdint>
#include <vector>

#include "fisherid/preprocess.hpp"
#include "fisherid/types.hpp"

namespace fisherid {

// Strictly increasing thresholds inside (0, 1).
class AlphaGrid {
 public:
  explicit AlphaGrid(std::vector<double> values);

  // 0.60, 0.62, ..., 0.98. The upper end stays below 1 where log(1 - a^2)
  // blows up.
  static AlphaGrid default_grid();

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

using CountMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Per-alpha, per-point inseparability statistics. A point y counts x as a
// violator when <x, y> > alpha * <y, y>; with unit-norm points this is just
// <x, y> > alpha. point_p = counts / (N - 1).
struct SeparabilityProfile {
  std::vector<double> alphas;
  CountMatrix counts;      // n_alphas x N integer violation counts
  Eigen::MatrixXd point_p; // n_alphas x N fractions in [0, 1]
  std::vector<double> mean_p;

  Index n_points() const { return point_p.cols(); }
};

// Exact inseparability fractions over the cloud for every alpha in the grid.
SeparabilityProfile inseparability_fractions(const PreprocessedCloud& cloud,
                                             const AlphaGrid& alphas, int threads = 1);

// Same result computed over block pairs of at most block_size points, keeping
// peak memory at O(block_size^2). Counts are exact integers, so any blocking
// merges to the identical profile.
SeparabilityProfile inseparability_counts_blocked(const PreprocessedCloud& cloud,
                                                  const AlphaGrid& alphas,
                                                  Index block_size, int threads = 1);

}  // namespace fisherid
