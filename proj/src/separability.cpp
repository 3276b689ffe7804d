#include "fisherid/separability.hpp"

#include <algorithm>
#include <stdexcept>

#include "fisherid/parallel.hpp"

namespace fisherid {

AlphaGrid::AlphaGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("alpha grid must not be empty");
  }
  double previous = 0.0;
  for (double alpha : values_) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("alpha values must lie in (0, 1)");
    }
    if (alpha <= previous) {
      throw std::invalid_argument("alpha values must be strictly increasing");
    }
    previous = alpha;
  }
}

AlphaGrid AlphaGrid::default_grid() {
  std::vector<double> values;
  values.reserve(20);
  for (int i = 0; i < 20; ++i) {
    values.push_back(static_cast<double>(60 + 2 * i) / 100.0);
  }
  return AlphaGrid(std::move(values));
}

namespace {

// Fixed-order inner product (4 independent accumulators, combined in a fixed
// tree). The summation order never depends on blocking or threading, which
// keeps violation counts bit-reproducible for any partition.
double dot_fixed(const double* a, const double* b, Index k) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  Index d = 0;
  for (; d + 4 <= k; d += 4) {
    acc0 += a[d] * b[d];
    acc1 += a[d + 1] * b[d + 1];
    acc2 += a[d + 2] * b[d + 2];
    acc3 += a[d + 3] * b[d + 3];
  }
  for (; d < k; ++d) acc0 += a[d] * b[d];
  return (acc0 + acc1) + (acc2 + acc3);
}

}  // namespace

SeparabilityProfile inseparability_counts_blocked(const PreprocessedCloud& cloud,
                                                  const AlphaGrid& alphas,
                                                  Index block_size, int threads) {
  const DataMatrix& points = cloud.points;
  const Index n = points.rows();
  const Index dim = points.cols();
  if (n < 2) {
    throw InsufficientDataError("separability needs at least two points");
  }
  if (block_size < 1) {
    throw std::invalid_argument("block size must be >= 1");
  }

  const std::vector<double>& grid = alphas.values();
  const Index n_alphas = static_cast<Index>(grid.size());

  Eigen::VectorXd squared_norms(n);
  for (Index i = 0; i < n; ++i) {
    squared_norms(i) = dot_fixed(points.data() + i * dim, points.data() + i * dim, dim);
  }

  // histogram(i, m): number of x whose violation extends up to grid slot m,
  // i.e. alpha_j < ratio exactly for j <= m. Per-alpha counts are its suffix
  // sums.
  CountMatrix histogram = CountMatrix::Zero(n, n_alphas);

  const Index n_blocks = (n + block_size - 1) / block_size;
  parallel_for(n_blocks, threads, [&](Index block) {
    const Index c0 = block * block_size;
    const Index c1 = std::min(c0 + block_size, n);
    for (Index o0 = 0; o0 < n; o0 += block_size) {
      const Index o1 = std::min(o0 + block_size, n);
      for (Index i = c0; i < c1; ++i) {
        const double* yi = points.data() + i * dim;
        const double sq = squared_norms(i);
        std::int64_t* hist_row = histogram.data() + i * n_alphas;
        for (Index j = o0; j < o1; ++j) {
          if (i == j) continue;
          const double v = dot_fixed(points.data() + j * dim, yi, dim);
          Index bucket;
          if (sq > 0.0) {
            const double ratio = v / sq;
            bucket = std::lower_bound(grid.begin(), grid.end(), ratio) - grid.begin();
          } else {
            bucket = v > 0.0 ? n_alphas : 0;
          }
          if (bucket > 0) ++hist_row[bucket - 1];
        }
      }
    }
  });

  SeparabilityProfile profile;
  profile.alphas = grid;
  profile.counts = CountMatrix::Zero(n_alphas, n);
  for (Index i = 0; i < n; ++i) {
    std::int64_t running = 0;
    for (Index a = n_alphas - 1; a >= 0; --a) {
      running += histogram(i, a);
      profile.counts(a, i) = running;
    }
  }

  profile.point_p = profile.counts.cast<double>() / static_cast<double>(n - 1);
  profile.mean_p.resize(static_cast<std::size_t>(n_alphas));
  for (Index a = 0; a < n_alphas; ++a) {
    profile.mean_p[static_cast<std::size_t>(a)] = profile.point_p.row(a).mean();
  }
  return profile;
}

SeparabilityProfile inseparability_fractions(const PreprocessedCloud& cloud,
                                             const AlphaGrid& alphas, int threads) {
  const Index n = cloud.points.rows();
  return inseparability_counts_blocked(cloud, alphas, std::min<Index>(std::max<Index>(n, 1), 1024),
                                       threads);
}

}  // namespace fisherid
