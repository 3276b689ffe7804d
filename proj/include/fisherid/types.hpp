#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisherid {

// Point clouds are stored one point per row, N x d.
using DataMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

// Input contains NaN/Inf or is malformed (unreadable table, ragged rows, ...).
class InvalidDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data collapse: zero spectrum, all points dropped, constant distances, ...
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Not enough points for the requested computation.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every point is Fisher-separable at every alpha of the grid; there is no
// nonzero inseparability fraction left to invert.
class FullySeparableSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws InvalidDataError unless `data` is a nonempty matrix of finite values.
void validate_data(const DataMatrix& data);

}  // namespace fisherid
