#include "fisherid/synthdata.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fisherid/rng.hpp"

namespace fisherid {

DatasetKind dataset_kind_from_string(const std::string& name) {
  if (name == "ball") return DatasetKind::ball;
  if (name == "sphere") return DatasetKind::sphere;
  if (name == "cube") return DatasetKind::cube;
  if (name == "gaussian") return DatasetKind::gaussian;
  if (name == "swiss_roll") return DatasetKind::swiss_roll;
  if (name == "ten_balls") return DatasetKind::ten_balls;
  throw std::invalid_argument("unknown dataset kind: " + name);
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::ball: return "ball";
    case DatasetKind::sphere: return "sphere";
    case DatasetKind::cube: return "cube";
    case DatasetKind::gaussian: return "gaussian";
    case DatasetKind::swiss_roll: return "swiss_roll";
    case DatasetKind::ten_balls: return "ten_balls";
  }
  return "unknown";
}

namespace {

void check_sizes(Index n, Index count) {
  if (n < 1 || count < 1) {
    throw std::invalid_argument("generator needs n >= 1 and count >= 1");
  }
}

// Standard normals into out[0..n), consuming Box-Muller pairs from rng.
void fill_normals(CounterRng& rng, double* out, Index n) {
  Index i = 0;
  for (; i + 2 <= n; i += 2) {
    rng.normal_pair(out[i], out[i + 1]);
  }
  if (i < n) {
    double spare;
    rng.normal_pair(out[i], spare);
  }
}

// Uniform direction on S^{dim-1} written into row; retries on the
// probability-zero event of a zero Gaussian vector.
void fill_unit_direction(CounterRng& rng, double* row, Index dim) {
  for (;;) {
    fill_normals(rng, row, dim);
    double sq = 0.0;
    for (Index d = 0; d < dim; ++d) sq += row[d] * row[d];
    if (sq > 0.0) {
      const double inv = 1.0 / std::sqrt(sq);
      for (Index d = 0; d < dim; ++d) row[d] *= inv;
      return;
    }
  }
}

void fill_ball_point(CounterRng& rng, double* row, Index dim) {
  fill_unit_direction(rng, row, dim);
  const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
  for (Index d = 0; d < dim; ++d) row[d] *= radius;
}

}  // namespace

DataMatrix sample_ball(Index n, Index count, std::uint64_t seed) {
  check_sizes(n, count);
  DataMatrix points(count, n);
  for (Index i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    fill_ball_point(rng, points.data() + i * n, n);
  }
  return points;
}

DataMatrix sample_sphere(Index ambient_dim, Index count, std::uint64_t seed) {
  check_sizes(ambient_dim, count);
  DataMatrix points(count, ambient_dim);
  for (Index i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    fill_unit_direction(rng, points.data() + i * ambient_dim, ambient_dim);
  }
  return points;
}

DataMatrix sample_cube(Index n, Index count, std::uint64_t seed) {
  check_sizes(n, count);
  DataMatrix points(count, n);
  for (Index i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    for (Index d = 0; d < n; ++d) points(i, d) = rng.uniform();
  }
  return points;
}

DataMatrix sample_gaussian(Index n, Index count, std::uint64_t seed) {
  check_sizes(n, count);
  DataMatrix points(count, n);
  for (Index i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    fill_normals(rng, points.data() + i * n, n);
  }
  return points;
}

DataMatrix swiss_roll(Index count, std::uint64_t seed, double noise) {
  check_sizes(3, count);
  if (noise < 0.0) {
    throw std::invalid_argument("swiss_roll: noise must be >= 0");
  }
  DataMatrix points(count, 3);
  for (Index i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const double t = 1.5 * std::numbers::pi + 3.0 * std::numbers::pi * rng.uniform();
    const double h = 21.0 * rng.uniform();
    points(i, 0) = t * std::cos(t);
    points(i, 1) = h;
    points(i, 2) = t * std::sin(t);
    if (noise > 0.0) {
      double g[4];
      rng.normal_pair(g[0], g[1]);
      rng.normal_pair(g[2], g[3]);
      for (Index d = 0; d < 3; ++d) points(i, d) += noise * g[d];
    }
  }
  return points;
}

std::pair<DataMatrix, std::vector<int>> ten_balls(Index points_per_ball,
                                                  std::uint64_t seed) {
  if (points_per_ball < 1) {
    throw std::invalid_argument("ten_balls: points_per_ball must be >= 1");
  }
  constexpr Index kBalls = 10;
  constexpr Index kAmbient = 11;

  DataMatrix points = DataMatrix::Zero(kBalls * points_per_ball, kAmbient);
  std::vector<int> labels(static_cast<std::size_t>(points.rows()));
  for (Index ball = 0; ball < kBalls; ++ball) {
    const Index dim = ball + 2;
    for (Index j = 0; j < points_per_ball; ++j) {
      const Index row = ball * points_per_ball + j;
      CounterRng rng(seed, static_cast<std::uint64_t>(row));
      fill_ball_point(rng, points.data() + row * kAmbient, dim);
      points(row, 0) += static_cast<double>(ball);
      labels[static_cast<std::size_t>(row)] = static_cast<int>(dim);
    }
  }
  return {std::move(points), std::move(labels)};
}

GeneratedDataset generate(const GeneratorSpec& spec) {
  GeneratedDataset dataset;
  switch (spec.kind) {
    case DatasetKind::ball:
      dataset.points = sample_ball(spec.n, spec.count, spec.seed);
      break;
    case DatasetKind::sphere:
      dataset.points = sample_sphere(spec.n + 1, spec.count, spec.seed);
      break;
    case DatasetKind::cube:
      dataset.points = sample_cube(spec.n, spec.count, spec.seed);
      break;
    case DatasetKind::gaussian:
      dataset.points = sample_gaussian(spec.n, spec.count, spec.seed);
      break;
    case DatasetKind::swiss_roll:
      dataset.points = swiss_roll(spec.count, spec.seed, spec.noise);
      break;
    case DatasetKind::ten_balls: {
      auto [points, labels] = ten_balls(spec.points_per_ball, spec.seed);
      dataset.points = std::move(points);
      dataset.labels = std::move(labels);
      break;
    }
  }

  if (spec.ambient) {
    const Index natural = dataset.points.cols();
    if (*spec.ambient < natural) {
      throw std::invalid_argument("ambient dimension below the natural dimension");
    }
    if (*spec.ambient > natural) {
      DataMatrix embedded = DataMatrix::Zero(dataset.points.rows(), *spec.ambient);
      embedded.leftCols(natural) = dataset.points;
      dataset.points = std::move(embedded);
    }
  }
  return dataset;
}

}  // namespace fisherid
