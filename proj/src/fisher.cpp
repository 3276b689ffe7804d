#include "fisherid/fisher.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fisherid/lambert.hpp"
#include "fisherid/neighbors.hpp"
#include "fisherid/parallel.hpp"

namespace fisherid {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
}

// L = -log(1 - alpha^2), the rate constant shared by all inversion formulas.
double alpha_rate(double alpha) { return -std::log1p(-alpha * alpha); }

}  // namespace

double p_ref(double n, double alpha) {
  check_alpha(alpha);
  if (!(n >= 1.0)) {
    throw std::domain_error("p_ref: n must be >= 1");
  }
  const double log_pow = 0.5 * (n - 1.0) * std::log1p(-alpha * alpha);
  return std::exp(log_pow) / (alpha * std::sqrt(2.0 * std::numbers::pi * n));
}

double n_from_p(double p, double alpha) {
  check_alpha(alpha);
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error("n_from_p: p must lie in (0, 1]");
  }
  const double rate = alpha_rate(alpha);
  const double one_minus = 1.0 - alpha * alpha;
  const double arg =
      rate / (2.0 * std::numbers::pi * p * p * alpha * alpha * one_minus);
  if (!std::isfinite(arg)) {
    throw std::overflow_error("n_from_p: inseparability fraction too small");
  }
  return lambert_w0(arg) / rate;
}

double max_dim_pointwise(Index n_points, double alpha) {
  if (n_points < 2) {
    throw std::invalid_argument("max_dim_pointwise: need at least two points");
  }
  return n_from_p(1.0 / static_cast<double>(n_points), alpha);
}

double max_dim_global(Index n_points, double alpha) {
  if (n_points < 2) {
    throw std::invalid_argument("max_dim_global: need at least two points");
  }
  const double n = static_cast<double>(n_points);
  return n_from_p(1.0 / (n * n), alpha);
}

AlphaSelection select_alpha(const SeparabilityProfile& profile) {
  const std::vector<double>& mean_p = profile.mean_p;
  double p_star = 0.0;
  for (double p : mean_p) p_star = std::max(p_star, p);
  if (p_star <= 0.0) {
    throw FullySeparableSignal("every point is separable at every alpha");
  }

  const double target = 0.8 * p_star;
  std::size_t best = mean_p.size() - 1;
  double best_distance = std::abs(mean_p.back() - target);
  for (std::size_t i = mean_p.size() - 1; i-- > 0;) {
    const double distance = std::abs(mean_p[i] - target);
    if (distance < best_distance) {  // strict: ties keep the larger alpha
      best = i;
      best_distance = distance;
    }
  }
  return {best, profile.alphas[best]};
}

namespace {

// Turns a measured profile into the global estimate plus per-alpha
// diagnostics. cap_points sets the saturation cap (the cloud size for global
// estimates, k+1 for neighborhood estimates).
std::pair<IdEstimate, IdProfile> estimate_from_profile(const SeparabilityProfile& profile,
                                                       Index cap_points,
                                                       Index n_points_used) {
  IdProfile diagnostics;
  diagnostics.per_alpha.reserve(profile.mean_p.size());
  for (std::size_t a = 0; a < profile.mean_p.size(); ++a) {
    IdEstimate estimate;
    estimate.alpha_used = profile.alphas[a];
    estimate.cap = max_dim_global(cap_points, estimate.alpha_used);
    estimate.n_points_used = n_points_used;
    if (profile.mean_p[a] > 0.0) {
      estimate.dimension = n_from_p(profile.mean_p[a], estimate.alpha_used);
    } else {
      estimate.saturated = true;
      estimate.dimension = estimate.cap;
    }
    diagnostics.per_alpha.push_back(estimate);
  }

  try {
    diagnostics.selected_index = select_alpha(profile).index;
  } catch (const FullySeparableSignal&) {
    // Fully separable at every alpha: report saturation at the smallest grid
    // alpha, where the measurable cap is largest.
    diagnostics.selected_index = 0;
  }
  return {diagnostics.per_alpha[diagnostics.selected_index], diagnostics};
}

}  // namespace

std::pair<IdEstimate, IdProfile> fisher_global_id(const PreprocessedCloud& cloud,
                                                  const AlphaGrid& alphas, int threads) {
  const SeparabilityProfile profile = inseparability_fractions(cloud, alphas, threads);
  const Index n = cloud.points.rows();
  return estimate_from_profile(profile, n, n);
}

std::vector<IdEstimate> fisher_pointwise_id(const PreprocessedCloud& cloud,
                                            const AlphaGrid& alphas,
                                            std::optional<double> alpha_override,
                                            int threads) {
  SeparabilityProfile profile;
  std::size_t alpha_index = 0;
  if (alpha_override) {
    check_alpha(*alpha_override);
    profile = inseparability_fractions(cloud, AlphaGrid({*alpha_override}), threads);
  } else {
    profile = inseparability_fractions(cloud, alphas, threads);
    try {
      alpha_index = select_alpha(profile).index;
    } catch (const FullySeparableSignal&) {
      alpha_index = 0;
    }
  }

  const double alpha = profile.alphas[alpha_index];
  const Index n = profile.n_points();
  const double cap = max_dim_pointwise(n, alpha);

  std::vector<IdEstimate> estimates(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    IdEstimate& estimate = estimates[static_cast<std::size_t>(i)];
    estimate.alpha_used = alpha;
    estimate.cap = cap;
    estimate.n_points_used = n;
    const double p = profile.point_p(static_cast<Index>(alpha_index), i);
    if (p > 0.0) {
      estimate.dimension = n_from_p(p, alpha);
    } else {
      estimate.saturated = true;
      estimate.dimension = cap;
    }
  }
  return estimates;
}

std::vector<IdEstimate> fisher_local_knn_id(const DataMatrix& data, Index k,
                                            const PreprocessConfig& config,
                                            const AlphaGrid& alphas, int threads) {
  validate_data(data);
  const Index n = data.rows();
  if (k < 1) {
    throw std::invalid_argument("fisher_local_knn_id: k must be >= 1");
  }
  if (k >= n) {
    throw InsufficientDataError("fisher_local_knn_id: need at least k+1 points");
  }

  const NeighborGraph graph = knn(data, k, threads);
  std::vector<IdEstimate> estimates(static_cast<std::size_t>(n));

  parallel_for(n, threads, [&](Index i) {
    DataMatrix neighborhood(k + 1, data.cols());
    neighborhood.row(0) = data.row(i);
    for (Index j = 0; j < k; ++j) {
      neighborhood.row(j + 1) = data.row(graph.indices(i, j));
    }
    IdEstimate& out = estimates[static_cast<std::size_t>(i)];
    try {
      const PreprocessedCloud cloud = preprocess_pipeline(neighborhood, config);
      const SeparabilityProfile profile = inseparability_fractions(cloud, alphas, 1);
      out = estimate_from_profile(profile, k + 1, cloud.points.rows()).first;
    } catch (const DegenerateDataError&) {
      out.degenerate = true;
      out.dimension = std::numeric_limits<double>::quiet_NaN();
      out.n_points_used = k + 1;
    } catch (const InsufficientDataError&) {
      out.degenerate = true;
      out.dimension = std::numeric_limits<double>::quiet_NaN();
      out.n_points_used = k + 1;
    }
  });
  return estimates;
}

}  // namespace fisherid
