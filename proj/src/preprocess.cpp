#include "fisherid/preprocess.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fisherid {

void validate_data(const DataMatrix& data) {
  if (data.rows() < 1 || data.cols() < 1) {
    throw InvalidDataError("empty data matrix");
  }
  if (!data.allFinite()) {
    throw InvalidDataError("data matrix contains NaN or Inf");
  }
}

DataMatrix center(const DataMatrix& data) {
  validate_data(data);
  return data.rowwise() - data.colwise().mean();
}

std::pair<DataMatrix, std::vector<double>> pca_reduce(const DataMatrix& centered,
                                                      double condition_threshold) {
  validate_data(centered);
  if (!(condition_threshold > 1.0)) {
    throw std::invalid_argument("condition threshold must be > 1");
  }

  const Index n = centered.rows();
  const Index d = centered.cols();
  const double denom = static_cast<double>(std::max<Index>(n - 1, 1));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();

  const double lambda1 = sigma(0) * sigma(0) / denom;
  if (lambda1 <= 0.0) {
    throw DegenerateDataError("data has an identically zero spectrum");
  }

  // The sample covariance has rank at most N-1 (rows of centered data sum to
  // zero), so never keep more components than that.
  const Index max_rank = std::min<Index>(n - 1 > 0 ? n - 1 : 1, d);
  const double cutoff = lambda1 / condition_threshold;

  Index k = 0;
  std::vector<double> eigenvalues;
  for (Index i = 0; i < std::min<Index>(max_rank, sigma.size()); ++i) {
    const double lambda = sigma(i) * sigma(i) / denom;
    if (i > 0 && lambda < cutoff) break;
    eigenvalues.push_back(lambda);
    ++k;
  }

  DataMatrix scores = centered * svd.matrixV().leftCols(k);
  return {std::move(scores), std::move(eigenvalues)};
}

DataMatrix whiten(const DataMatrix& scores, const std::vector<double>& eigenvalues) {
  validate_data(scores);
  if (static_cast<Index>(eigenvalues.size()) != scores.cols()) {
    throw std::invalid_argument("one eigenvalue per score column required");
  }
  for (double lambda : eigenvalues) {
    if (!(lambda > 0.0)) {
      throw DegenerateDataError("whitening requires strictly positive eigenvalues");
    }
  }
  DataMatrix out = scores;
  for (Index j = 0; j < out.cols(); ++j) {
    out.col(j) /= std::sqrt(eigenvalues[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::pair<DataMatrix, std::vector<Index>> project_sphere(const DataMatrix& data) {
  validate_data(data);
  constexpr double kDropNorm = 1e-10;

  std::vector<Index> kept;
  std::vector<Index> dropped;
  kept.reserve(static_cast<std::size_t>(data.rows()));
  for (Index i = 0; i < data.rows(); ++i) {
    (data.row(i).norm() < kDropNorm ? dropped : kept).push_back(i);
  }
  if (kept.empty()) {
    throw DegenerateDataError("all points collapsed to the origin");
  }

  DataMatrix out(static_cast<Index>(kept.size()), data.cols());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto row = data.row(kept[r]);
    out.row(static_cast<Index>(r)) = row / row.norm();
  }
  return {std::move(out), std::move(dropped)};
}

PreprocessedCloud preprocess_pipeline(const DataMatrix& data, const PreprocessConfig& config) {
  if (data.rows() < 2) {
    throw InsufficientDataError("preprocessing needs at least two points");
  }

  PreprocessedCloud cloud;
  cloud.mean_vector = data.colwise().mean();

  DataMatrix centered = center(data);
  auto [scores, eigenvalues] = pca_reduce(centered, config.condition_threshold);
  cloud.retained_eigenvalues = std::move(eigenvalues);
  DataMatrix white = whiten(scores, cloud.retained_eigenvalues);

  if (config.project_to_sphere) {
    auto [sphere, dropped] = project_sphere(white);
    cloud.points = std::move(sphere);
    cloud.dropped_point_indices = std::move(dropped);
  } else {
    cloud.points = std::move(white);
  }
  return cloud;
}

}  // namespace fisherid
