#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fisherid/preprocess.hpp"
#include "fisherid/separability.hpp"
#include "fisherid/types.hpp"

namespace fisherid {

struct IdEstimate {
  double dimension = 0.0;  // equals cap when saturated; NaN when degenerate
  double alpha_used = 0.0;
  bool saturated = false;
  bool degenerate = false;  // set by local estimation on collapsed neighborhoods
  double cap = 0.0;         // maximal measurable dimension at this alpha and N
  Index n_points_used = 0;
};

struct IdProfile {
  std::vector<IdEstimate> per_alpha;
  std::size_t selected_index = 0;
};

// Reference inseparability probability of the uniform unit sphere embedded in
// n dimensions: (1 - a^2)^((n-1)/2) / (a * sqrt(2*pi*n)).
double p_ref(double n, double alpha);

// Inverts p_ref with respect to n through the Lambert W function:
//   n = W0(-log(1-a^2) / (2*pi*p^2*a^2*(1-a^2))) / (-log(1-a^2)).
// Requires p in (0, 1]; p = 0 is a saturation condition the caller resolves
// by substituting the relevant cap.
double n_from_p(double p, double alpha);

// Largest dimension measurable from a single point's fraction, p = 1/N.
double max_dim_pointwise(Index n_points, double alpha);

// Largest dimension measurable from the mean fraction, p = 1/N^2. Also the
// cap for a k-neighborhood estimate with n_points = k + 1.
double max_dim_global(Index n_points, double alpha);

struct AlphaSelection {
  std::size_t index = 0;
  double alpha = 0.0;
};

// Rule of thumb: pick the grid alpha whose mean_p lies closest to 0.8 times
// the largest measured mean_p; ties go to the larger alpha. Throws
// FullySeparableSignal when every mean_p is zero.
AlphaSelection select_alpha(const SeparabilityProfile& profile);

// Global intrinsic dimension from the mean inseparability at the selected
// alpha, plus the per-alpha diagnostic profile. A fully separable cloud
// saturates at the cap of the smallest grid alpha (the largest cap).
std::pair<IdEstimate, IdProfile> fisher_global_id(const PreprocessedCloud& cloud,
                                                  const AlphaGrid& alphas,
                                                  int threads = 1);

// Per-point dimension from each point's own inseparability fraction at the
// globally selected alpha (or at alpha_override). Points with a zero fraction
// saturate at max_dim_pointwise.
std::vector<IdEstimate> fisher_pointwise_id(const PreprocessedCloud& cloud,
                                            const AlphaGrid& alphas,
                                            std::optional<double> alpha_override = {},
                                            int threads = 1);

// Local dimension at every point: the global estimator applied to the
// neighborhood {y} + kNN(y) of k+1 raw points, preprocessed on its own, with
// alpha re-selected per neighborhood. Collapsed neighborhoods yield estimates
// flagged degenerate; output order matches input order.
std::vector<IdEstimate> fisher_local_knn_id(const DataMatrix& data, Index k,
                                            const PreprocessConfig& config,
                                            const AlphaGrid& alphas, int threads = 1);

}  // namespace fisherid
