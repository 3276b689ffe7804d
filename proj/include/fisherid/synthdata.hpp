#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fisherid/types.hpp"

namespace fisherid {

enum class DatasetKind { ball, sphere, cube, gaussian, swiss_roll, ten_balls };

DatasetKind dataset_kind_from_string(const std::string& name);
std::string to_string(DatasetKind kind);

struct GeneratorSpec {
  DatasetKind kind = DatasetKind::ball;
  Index n = 2;          // intrinsic dimension parameter (sphere: S^n in R^{n+1})
  Index count = 1000;   // number of points
  std::optional<Index> ambient;  // zero-pad embedding dimension, >= natural dim
  std::uint64_t seed = 0;
  double noise = 0.0;            // swiss_roll only
  Index points_per_ball = 500;   // ten_balls only
};

// All generators are deterministic functions of (spec, seed): point i draws
// from CounterRng(seed, stream = i), so any generation order produces the
// same bits.

// Uniform sample of the unit ball B^n (Gaussian direction, radius U^{1/n}).
DataMatrix sample_ball(Index n, Index count, std::uint64_t seed);

// Uniform sample of the unit sphere S^{ambient_dim - 1} in R^{ambient_dim}.
DataMatrix sample_sphere(Index ambient_dim, Index count, std::uint64_t seed);

// Uniform sample of [0, 1]^n.
DataMatrix sample_cube(Index n, Index count, std::uint64_t seed);

// Standard multivariate Gaussian in R^n.
DataMatrix sample_gaussian(Index n, Index count, std::uint64_t seed);

// (t cos t, h, t sin t) with t ~ U[1.5*pi, 4.5*pi], h ~ U[0, 21], plus
// isotropic Gaussian noise of the given sigma.
DataMatrix swiss_roll(Index count, std::uint64_t seed, double noise = 0.0);

// Ten unit balls of dimensions 2..11 in R^11. Ball i (dimension d = i + 2)
// occupies the first d coordinates and is shifted by i along the first axis,
// so consecutive balls share all but one of their axes. Labels carry each
// point's ball dimension.
std::pair<DataMatrix, std::vector<int>> ten_balls(Index points_per_ball,
                                                  std::uint64_t seed);

struct GeneratedDataset {
  DataMatrix points;
  std::vector<int> labels;  // empty unless the generator defines them
};

// Dispatch on the spec; applies the optional zero-padded ambient embedding.
GeneratedDataset generate(const GeneratorSpec& spec);

}  // namespace fisherid
