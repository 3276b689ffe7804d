#include "fisherid/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "fisherid/neighbors.hpp"
#include "fisherid/parallel.hpp"
#include "fisherid/preprocess.hpp"
#include "fisherid/rng.hpp"

namespace fisherid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of_finite(const std::vector<double>& values) {
  double sum = 0.0;
  Index count = 0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : kNaN;
}

}  // namespace

std::vector<Index> subsample_indices(Index n_total, Index size, std::uint64_t seed,
                                     int repeat_index) {
  if (size < 1 || size > n_total) {
    throw std::invalid_argument("subsample size out of range");
  }
  CounterRng rng(seed, static_cast<std::uint64_t>(size) * 1000003ULL +
                           static_cast<std::uint64_t>(repeat_index));
  std::vector<Index> pool(static_cast<std::size_t>(n_total));
  std::iota(pool.begin(), pool.end(), Index{0});
  // Partial Fisher-Yates, then sort so a full-size subsample reproduces the
  // input row order exactly.
  for (Index i = 0; i < size; ++i) {
    const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n_total - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(size));
  std::sort(pool.begin(), pool.end());
  return pool;
}

double empirical_percentile(std::vector<double> values, double q) {
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return !std::isfinite(v); }),
               values.end());
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

DataMatrix take_rows(const DataMatrix& data, const std::vector<Index>& rows) {
  DataMatrix out(static_cast<Index>(rows.size()), data.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.row(static_cast<Index>(r)) = data.row(rows[r]);
  }
  return out;
}

DataMatrix neighborhood_of(const DataMatrix& data, const NeighborGraph& graph,
                           Index point, Index k) {
  DataMatrix neighborhood(k + 1, data.cols());
  neighborhood.row(0) = data.row(point);
  for (Index j = 0; j < k; ++j) {
    neighborhood.row(j + 1) = data.row(graph.indices(point, j));
  }
  return neighborhood;
}

// Mean over points of a global estimator applied to each k-neighborhood;
// neighborhoods where the estimator cannot run are skipped.
double mean_local_estimate(const DataMatrix& sub, const NeighborGraph& graph, Index k,
                           int threads,
                           const std::function<double(const DataMatrix&)>& estimator) {
  std::vector<double> locals(static_cast<std::size_t>(sub.rows()), kNaN);
  parallel_for(sub.rows(), threads, [&](Index i) {
    try {
      locals[static_cast<std::size_t>(i)] = estimator(neighborhood_of(sub, graph, i, k));
    } catch (const std::exception&) {
      // leave NaN
    }
  });
  return mean_of_finite(locals);
}

struct EstimatorOutput {
  double global = kNaN;
  double mean_local = kNaN;
  double mean_pointwise = kNaN;
  bool saturated = false;
  bool local_skipped = false;
};

class SubsampleRunner {
 public:
  SubsampleRunner(const DataMatrix& sub, const SubsampleOptions& options)
      : sub_(sub), options_(options) {}

  EstimatorOutput run(const std::string& estimator_id) {
    const bool local_possible = options_.k_local < sub_.rows();
    EstimatorOutput out;
    out.local_skipped = !local_possible;

    if (estimator_id == "fishers") {
      const PreprocessedCloud cloud = preprocess_pipeline(sub_, options_.preprocess);
      const auto [global, profile] =
          fisher_global_id(cloud, options_.alphas, options_.threads);
      out.global = global.dimension;
      out.saturated = global.saturated;

      std::vector<double> pointwise;
      for (const IdEstimate& e :
           fisher_pointwise_id(cloud, options_.alphas, {}, options_.threads)) {
        pointwise.push_back(e.dimension);
      }
      out.mean_pointwise = mean_of_finite(pointwise);

      if (local_possible) {
        std::vector<double> locals;
        for (const IdEstimate& e :
             fisher_local_knn_id(sub_, options_.k_local, options_.preprocess,
                                 options_.alphas, options_.threads)) {
          if (!e.degenerate) locals.push_back(e.dimension);
        }
        out.mean_local = mean_of_finite(locals);
      }
      return out;
    }

    if (estimator_id == "mle") {
      const Index k = options_.baselines.mle_k;
      if (sub_.rows() > k) {
        out.global = mle_id(sub_, k, options_.threads).global;
      }
      if (local_possible) {
        out.mean_local = mean_local_estimate(
            sub_, graph(), options_.k_local, options_.threads,
            [&](const DataMatrix& nb) { return mle_id(nb, k, 1).global; });
      }
      return out;
    }

    if (estimator_id == "cd") {
      const auto quantiles = options_.baselines.cd_radius_quantiles;
      if (sub_.rows() >= 100) {
        out.global = correlation_dimension(sub_, quantiles).dimension;
      }
      if (local_possible && options_.k_local + 1 >= 100) {
        out.mean_local = mean_local_estimate(
            sub_, graph(), options_.k_local, options_.threads,
            [&](const DataMatrix& nb) {
              return correlation_dimension(nb, quantiles).dimension;
            });
      }
      return out;
    }

    if (estimator_id == "twonn") {
      const double discard = options_.baselines.twonn_discard_fraction;
      if (sub_.rows() >= 100) {
        out.global = twonn_id(sub_, discard, options_.threads).dimension;
      }
      if (local_possible && options_.k_local + 1 >= 100) {
        out.mean_local = mean_local_estimate(
            sub_, graph(), options_.k_local, options_.threads,
            [&](const DataMatrix& nb) { return twonn_id(nb, discard, 1).dimension; });
      }
      return out;
    }

    throw std::invalid_argument("unknown estimator: " + estimator_id);
  }

 private:
  // kNN graph shared by every estimator's local variant, built on demand.
  const NeighborGraph& graph() {
    if (!graph_built_) {
      graph_ = knn(sub_, options_.k_local, options_.threads);
      graph_built_ = true;
    }
    return graph_;
  }

  const DataMatrix& sub_;
  const SubsampleOptions& options_;
  NeighborGraph graph_;
  bool graph_built_ = false;
};

}  // namespace

ExperimentReport subsample_experiment(const DataMatrix& data,
                                      const std::string& dataset_id,
                                      const SubsampleOptions& options) {
  validate_data(data);
  if (options.sizes.empty()) {
    throw std::invalid_argument("subsample_experiment: no sizes given");
  }
  if (options.repeats < 1) {
    throw std::invalid_argument("subsample_experiment: repeats must be >= 1");
  }
  for (Index size : options.sizes) {
    if (size < 2 || size > data.rows()) {
      throw std::invalid_argument("subsample_experiment: size out of range");
    }
  }
  if (options.estimators.empty()) {
    throw std::invalid_argument("subsample_experiment: no estimators selected");
  }
  for (const std::string& estimator : options.estimators) {
    if (estimator != "fishers" && estimator != "mle" && estimator != "cd" &&
        estimator != "twonn") {
      throw std::invalid_argument("unknown estimator: " + estimator);
    }
  }

  std::vector<Index> sizes = options.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  ExperimentReport report;
  for (Index size : sizes) {
    for (int repeat = 0; repeat < options.repeats; ++repeat) {
      const DataMatrix sub =
          take_rows(data, subsample_indices(data.rows(), size, options.seed, repeat));
      SubsampleRunner runner(sub, options);
      for (const std::string& estimator_id : options.estimators) {
        BenchmarkRecord record;
        record.dataset_id = dataset_id;
        record.estimator_id = estimator_id;
        record.subsample_size = size;
        record.repeat_index = repeat;

        const auto start = std::chrono::steady_clock::now();
        const EstimatorOutput out = runner.run(estimator_id);
        record.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();

        record.global_id = out.global;
        record.mean_local_id = out.mean_local;
        record.mean_pointwise_id = out.mean_pointwise;
        record.global_saturated = out.saturated;
        record.local_skipped = out.local_skipped;
        report.records.push_back(std::move(record));
      }
    }
  }

  std::sort(report.records.begin(), report.records.end(),
            [](const BenchmarkRecord& a, const BenchmarkRecord& b) {
              return std::tie(a.dataset_id, a.estimator_id, a.subsample_size,
                              a.repeat_index) <
                     std::tie(b.dataset_id, b.estimator_id, b.subsample_size,
                              b.repeat_index);
            });

  // One summary cell per (dataset, estimator, size), records already grouped.
  for (std::size_t begin = 0; begin < report.records.size();) {
    std::size_t end = begin;
    const BenchmarkRecord& head = report.records[begin];
    std::vector<double> global, local, pointwise;
    while (end < report.records.size() &&
           report.records[end].dataset_id == head.dataset_id &&
           report.records[end].estimator_id == head.estimator_id &&
           report.records[end].subsample_size == head.subsample_size) {
      global.push_back(report.records[end].global_id);
      local.push_back(report.records[end].mean_local_id);
      pointwise.push_back(report.records[end].mean_pointwise_id);
      ++end;
    }
    SummaryCell cell;
    cell.dataset_id = head.dataset_id;
    cell.estimator_id = head.estimator_id;
    cell.subsample_size = head.subsample_size;
    cell.repeats = static_cast<int>(end - begin);
    cell.global_mean = mean_of_finite(global);
    cell.global_lo = empirical_percentile(global, 0.025);
    cell.global_hi = empirical_percentile(global, 0.975);
    cell.local_mean = mean_of_finite(local);
    cell.local_lo = empirical_percentile(local, 0.025);
    cell.local_hi = empirical_percentile(local, 0.975);
    cell.pointwise_mean = mean_of_finite(pointwise);
    cell.pointwise_lo = empirical_percentile(pointwise, 0.025);
    cell.pointwise_hi = empirical_percentile(pointwise, 0.975);
    report.summary.push_back(std::move(cell));
    begin = end;
  }
  return report;
}

std::vector<CapRow> cap_curves(const AlphaGrid& alphas, const std::vector<Index>& sizes) {
  std::vector<Index> ordered = sizes;
  std::sort(ordered.begin(), ordered.end());
  std::vector<CapRow> rows;
  rows.reserve(alphas.size() * ordered.size());
  for (double alpha : alphas.values()) {
    for (Index n : ordered) {
      CapRow row;
      row.alpha = alpha;
      row.n_points = n;
      row.cap_pointwise = max_dim_pointwise(n, alpha);
      row.cap_global = max_dim_global(n, alpha);
      rows.push_back(row);
    }
  }
  return rows;
}

AlphaSweepReport alpha_sweep_report(const DataMatrix& data, const AlphaGrid& alphas,
                                    const PreprocessConfig& config, int threads) {
  const PreprocessedCloud cloud = preprocess_pipeline(data, config);
  const SeparabilityProfile profile = inseparability_fractions(cloud, alphas, threads);
  const Index n = profile.n_points();

  AlphaSweepReport report;
  report.n_points_used = n;
  report.retained_components = static_cast<Index>(cloud.retained_eigenvalues.size());
  report.dropped_point_indices = cloud.dropped_point_indices;

  std::size_t selected = 0;
  try {
    selected = select_alpha(profile).index;
  } catch (const FullySeparableSignal&) {
    report.fully_separable = true;
  }

  constexpr int kBins = 20;
  for (std::size_t a = 0; a < profile.mean_p.size(); ++a) {
    AlphaSweepRow row;
    row.alpha = profile.alphas[a];
    row.mean_p = profile.mean_p[a];
    row.cap = max_dim_global(n, row.alpha);
    row.selected = !report.fully_separable && a == selected;
    if (row.mean_p > 0.0) {
      row.dimension = n_from_p(row.mean_p, row.alpha);
    } else {
      row.saturated = true;
      row.dimension = row.cap;
    }
    report.rows.push_back(row);

    std::vector<std::int64_t> hist(kBins + 1, 0);
    for (Index i = 0; i < n; ++i) {
      const double p = profile.point_p(static_cast<Index>(a), i);
      if (p <= 0.0) {
        ++hist[0];
      } else {
        const int bin = std::min(kBins - 1, static_cast<int>(p * kBins));
        ++hist[static_cast<std::size_t>(bin) + 1];
      }
    }
    report.histograms.push_back(std::move(hist));
  }
  return report;
}

}  // namespace fisherid
