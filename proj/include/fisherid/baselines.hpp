#pragma once

#include <utility>
#include <vector>

#include "fisherid/types.hpp"

namespace fisherid {

struct BaselineConfig {
  Index mle_k = 20;
  std::pair<double, double> cd_radius_quantiles{0.05, 0.5};
  double twonn_discard_fraction = 0.1;
};

struct MleResult {
  double global = 0.0;
  std::vector<double> local;  // per point, NaN where skipped
  Index skipped = 0;          // points with a zero neighbor distance
};

// Levina-Bickel maximum likelihood estimator with k neighbors. The global
// value averages the per-point inverse estimates and takes the reciprocal.
MleResult mle_id(const DataMatrix& data, Index k, int threads = 1);

struct CorrelationDimensionResult {
  double dimension = 0.0;
  double fit_residual = 0.0;  // RMS residual of the log-log fit
  int n_radii = 0;
};

// Slope of log C(r) against log r, where C(r) is the fraction of pairs closer
// than r, fitted over radii between the given quantiles of the pairwise
// distance distribution.
CorrelationDimensionResult correlation_dimension(
    const DataMatrix& data, std::pair<double, double> radius_quantiles = {0.05, 0.5});

struct TwoNnResult {
  double dimension = 0.0;
  Index skipped = 0;  // points with a zero first-neighbor distance
};

// Two-nearest-neighbor estimator: closed-form MLE over the ratios of second
// to first neighbor distances, after discarding the top fraction of ratios.
TwoNnResult twonn_id(const DataMatrix& data, double discard_fraction = 0.1,
                     int threads = 1);

}  // namespace fisherid
