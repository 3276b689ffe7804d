#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fisherid/baselines.hpp"
#include "fisherid/fisher.hpp"
#include "fisherid/separability.hpp"
#include "fisherid/types.hpp"

namespace fisherid {

struct BenchmarkRecord {
  std::string dataset_id;
  std::string estimator_id;
  Index subsample_size = 0;
  int repeat_index = 0;
  double global_id = 0.0;          // NaN when the estimator cannot run
  double mean_local_id = 0.0;      // NaN when skipped or not produced
  double mean_pointwise_id = 0.0;  // NaN unless the estimator defines it
  bool global_saturated = false;
  bool local_skipped = false;      // k_local >= subsample size
  double runtime_seconds = 0.0;
};

struct SummaryCell {
  std::string dataset_id;
  std::string estimator_id;
  Index subsample_size = 0;
  int repeats = 0;
  // Mean plus empirical 2.5 / 97.5 percentiles over repeats.
  double global_mean = 0.0, global_lo = 0.0, global_hi = 0.0;
  double local_mean = 0.0, local_lo = 0.0, local_hi = 0.0;
  double pointwise_mean = 0.0, pointwise_lo = 0.0, pointwise_hi = 0.0;
};

struct ExperimentReport {
  std::vector<BenchmarkRecord> records;  // sorted by (dataset, estimator, size, repeat)
  std::vector<SummaryCell> summary;
};

struct SubsampleOptions {
  std::vector<Index> sizes;
  int repeats = 10;
  Index k_local = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> estimators{"fishers", "mle", "cd", "twonn"};
  AlphaGrid alphas = AlphaGrid::default_grid();
  PreprocessConfig preprocess;
  BaselineConfig baselines;
  int threads = 1;
};

// Uniform draw of `size` distinct row indices, returned ascending. Depends
// only on (n_total, size, seed, repeat_index) -- never on which estimators
// run -- so repeats are comparable across estimator selections.
std::vector<Index> subsample_indices(Index n_total, Index size, std::uint64_t seed,
                                     int repeat_index);

// Linear-interpolation empirical percentile (q in [0, 1]) of the finite
// entries of values; NaN when none are finite.
double empirical_percentile(std::vector<double> values, double q);

// For every (size, repeat) draws one subsample and runs the global, local
// (k_local-neighborhood) and, for the separability estimator, pointwise
// variants of each configured estimator. Local runs with k_local >= size are
// skipped and marked.
ExperimentReport subsample_experiment(const DataMatrix& data,
                                      const std::string& dataset_id,
                                      const SubsampleOptions& options);

struct CapRow {
  double alpha = 0.0;
  Index n_points = 0;
  double cap_pointwise = 0.0;
  double cap_global = 0.0;
};

// Tabulates both measurable-dimension caps over the (alpha, N) grid, alphas
// outer and ascending, sizes inner and ascending.
std::vector<CapRow> cap_curves(const AlphaGrid& alphas, const std::vector<Index>& sizes);

struct AlphaSweepRow {
  double alpha = 0.0;
  double mean_p = 0.0;
  double dimension = 0.0;  // cap when saturated
  bool saturated = false;
  bool selected = false;
  double cap = 0.0;
};

struct AlphaSweepReport {
  std::vector<AlphaSweepRow> rows;
  // Per alpha: [0] counts points with p == 0, then 20 equal bins over (0, 1].
  std::vector<std::vector<std::int64_t>> histograms;
  bool fully_separable = false;
  Index n_points_used = 0;
  Index retained_components = 0;
  std::vector<Index> dropped_point_indices;
};

// Per-alpha mean inseparability, dimension estimate, histogram of point
// fractions and the selected-alpha marker for one dataset.
AlphaSweepReport alpha_sweep_report(const DataMatrix& data, const AlphaGrid& alphas,
                                    const PreprocessConfig& config = {},
                                    int threads = 1);

}  // namespace fisherid
