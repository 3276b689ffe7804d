#pragma once

#include <utility>
#include <vector>

#include "fisherid/types.hpp"

namespace fisherid {

struct PreprocessConfig {
  // Spectral cutoff: principal components with eigenvalue >= lambda_1 / C are
  // retained.
  double condition_threshold = 10.0;
  // Normalize every point to unit length after whitening.
  bool project_to_sphere = true;
};

struct PreprocessedCloud {
  DataMatrix points;                        // N' x k, unit rows when projected
  std::vector<double> retained_eigenvalues; // descending, k values
  Eigen::VectorXd mean_vector;              // length d, subtracted column means
  std::vector<Index> dropped_point_indices; // original rows mapped to ~0
};

// Subtracts column means. Throws InvalidDataError on non-finite input.
DataMatrix center(const DataMatrix& data);

// Scores on the leading principal components of centered data, together with
// the retained covariance eigenvalues (descending). Components are kept while
// lambda_k >= lambda_1 / condition_threshold; at least one is always kept and
// never more than min(N-1, d). Throws DegenerateDataError when the spectrum
// is identically zero.
std::pair<DataMatrix, std::vector<double>> pca_reduce(const DataMatrix& centered,
                                                      double condition_threshold);

// Rescales each score column by 1/sqrt(eigenvalue) so the sample covariance
// becomes the identity. Eigenvalues must be strictly positive.
DataMatrix whiten(const DataMatrix& scores, const std::vector<double>& eigenvalues);

// Normalizes rows to unit length. Rows with norm < 1e-10 are dropped and
// their original indices reported. Throws DegenerateDataError if nothing
// survives.
std::pair<DataMatrix, std::vector<Index>> project_sphere(const DataMatrix& data);

// center -> pca_reduce -> whiten -> (optional) project_sphere.
PreprocessedCloud preprocess_pipeline(const DataMatrix& data,
                                      const PreprocessConfig& config = {});

}  // namespace fisherid
