#include "fisherid/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fisherid/neighbors.hpp"

namespace fisherid {

MleResult mle_id(const DataMatrix& data, Index k, int threads) {
  const Index n = data.rows();
  if (k < 3) {
    throw std::invalid_argument("mle_id: k must be >= 3");
  }
  if (n <= k) {
    throw InsufficientDataError("mle_id: need more than k points");
  }

  const NeighborGraph graph = knn(data, k, threads);

  MleResult result;
  result.local.assign(static_cast<std::size_t>(n),
                      std::numeric_limits<double>::quiet_NaN());
  double inverse_sum = 0.0;
  Index valid = 0;
  for (Index i = 0; i < n; ++i) {
    const double t_k = graph.distances(i, k - 1);
    if (!(graph.distances(i, 0) > 0.0)) {  // duplicate point
      ++result.skipped;
      continue;
    }
    double log_sum = 0.0;
    for (Index j = 0; j < k - 1; ++j) {
      log_sum += std::log(t_k / graph.distances(i, j));
    }
    const double inverse = log_sum / static_cast<double>(k - 1);
    result.local[static_cast<std::size_t>(i)] = 1.0 / inverse;
    inverse_sum += inverse;
    ++valid;
  }
  if (valid == 0) {
    throw DegenerateDataError("mle_id: every point has duplicate neighbors");
  }
  result.global = static_cast<double>(valid) / inverse_sum;
  return result;
}

CorrelationDimensionResult correlation_dimension(
    const DataMatrix& data, std::pair<double, double> radius_quantiles) {
  validate_data(data);
  const auto [q_low, q_high] = radius_quantiles;
  if (!(q_low > 0.0 && q_low < q_high && q_high < 1.0)) {
    throw std::invalid_argument("correlation_dimension: need 0 < q_low < q_high < 1");
  }
  const Index n = data.rows();
  if (n < 100) {
    throw InsufficientDataError("correlation_dimension: need at least 100 points");
  }

  const Index dim = data.cols();
  std::vector<double> pair_distances;
  pair_distances.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Index i = 0; i < n; ++i) {
    const double* a = data.data() + i * dim;
    for (Index j = i + 1; j < n; ++j) {
      const double* b = data.data() + j * dim;
      double sq = 0.0;
      for (Index d = 0; d < dim; ++d) {
        const double delta = a[d] - b[d];
        sq += delta * delta;
      }
      pair_distances.push_back(std::sqrt(sq));
    }
  }
  std::sort(pair_distances.begin(), pair_distances.end());

  const auto quantile = [&](double q) {
    const double h = q * static_cast<double>(pair_distances.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= pair_distances.size()) return pair_distances.back();
    return pair_distances[lo] + frac * (pair_distances[lo + 1] - pair_distances[lo]);
  };

  const double r_low = quantile(q_low);
  const double r_high = quantile(q_high);
  if (!(r_low > 0.0) || !(r_high > r_low)) {
    throw DegenerateDataError("correlation_dimension: degenerate distance distribution");
  }

  constexpr int kRadii = 20;
  const double total_pairs = static_cast<double>(pair_distances.size());
  std::vector<double> log_r, log_c;
  for (int t = 0; t < kRadii; ++t) {
    const double f = static_cast<double>(t) / (kRadii - 1);
    const double r = r_low * std::pow(r_high / r_low, f);
    const auto below =
        std::lower_bound(pair_distances.begin(), pair_distances.end(), r) -
        pair_distances.begin();
    if (below == 0) continue;
    log_r.push_back(std::log(r));
    log_c.push_back(std::log(static_cast<double>(below) / total_pairs));
  }
  if (log_r.size() < 10) {
    throw DegenerateDataError("correlation_dimension: fewer than 10 usable radii");
  }

  // Least-squares slope of log C against log r.
  const auto m = static_cast<double>(log_r.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t t = 0; t < log_r.size(); ++t) {
    mean_x += log_r[t];
    mean_y += log_c[t];
  }
  mean_x /= m;
  mean_y /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < log_r.size(); ++t) {
    sxx += (log_r[t] - mean_x) * (log_r[t] - mean_x);
    sxy += (log_r[t] - mean_x) * (log_c[t] - mean_y);
  }

  CorrelationDimensionResult result;
  result.dimension = sxy / sxx;
  result.n_radii = static_cast<int>(log_r.size());
  const double intercept = mean_y - result.dimension * mean_x;
  double residual_sq = 0.0;
  for (std::size_t t = 0; t < log_r.size(); ++t) {
    const double fit = intercept + result.dimension * log_r[t];
    residual_sq += (log_c[t] - fit) * (log_c[t] - fit);
  }
  result.fit_residual = std::sqrt(residual_sq / m);
  return result;
}

TwoNnResult twonn_id(const DataMatrix& data, double discard_fraction, int threads) {
  if (!(discard_fraction >= 0.0 && discard_fraction <= 0.2)) {
    throw std::invalid_argument("twonn_id: discard fraction must lie in [0, 0.2]");
  }
  const Index n = data.rows();
  if (n < 100) {
    throw InsufficientDataError("twonn_id: need at least 100 points");
  }

  const NeighborGraph graph = knn(data, 2, threads);

  TwoNnResult result;
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double r1 = graph.distances(i, 0);
    if (!(r1 > 0.0)) {
      ++result.skipped;
      continue;
    }
    ratios.push_back(graph.distances(i, 1) / r1);
  }
  if (ratios.empty()) {
    throw DegenerateDataError("twonn_id: every first-neighbor distance is zero");
  }

  std::sort(ratios.begin(), ratios.end());
  const std::size_t discarded =
      static_cast<std::size_t>(std::floor(discard_fraction * static_cast<double>(ratios.size())));
  const std::size_t retained = ratios.size() - discarded;

  // Censored maximum likelihood: discarded ratios enter only through the
  // censoring point, which keeps the estimate unbiased under truncation.
  // With discard_fraction = 0 this is the plain M / sum(log mu) form.
  double log_sum = 0.0;
  for (std::size_t i = 0; i < retained; ++i) log_sum += std::log(ratios[i]);
  log_sum += static_cast<double>(discarded) * std::log(ratios[retained - 1]);
  if (!(log_sum > 0.0)) {
    throw DegenerateDataError("twonn_id: neighbor ratios are degenerate");
  }
  result.dimension = static_cast<double>(retained) / log_sum;
  return result;
}

}  // namespace fisherid
