#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "fisherid/baselines.hpp"
#include "fisherid/benchmark.hpp"
#include "fisherid/fisher.hpp"
#include "fisherid/lambert.hpp"
#include "fisherid/neighbors.hpp"
#include "fisherid/preprocess.hpp"
#include "fisherid/separability.hpp"
#include "fisherid/synthdata.hpp"

namespace py = pybind11;
using namespace fisherid;

namespace {

AlphaGrid grid_from(const std::optional<std::vector<double>>& alphas) {
  return alphas ? AlphaGrid(*alphas) : AlphaGrid::default_grid();
}

PreprocessConfig config_from(double condition_threshold, bool project_to_sphere) {
  return PreprocessConfig{condition_threshold, project_to_sphere};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Intrinsic dimension estimation from Fisher separability statistics";

  py::register_exception<InvalidDataError>(m, "InvalidDataError");
  py::register_exception<DegenerateDataError>(m, "DegenerateDataError");
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError");
  py::register_exception<FullySeparableSignal>(m, "FullySeparableSignal");

  py::class_<IdEstimate>(m, "IdEstimate")
      .def_readonly("dimension", &IdEstimate::dimension)
      .def_readonly("alpha_used", &IdEstimate::alpha_used)
      .def_readonly("saturated", &IdEstimate::saturated)
      .def_readonly("degenerate", &IdEstimate::degenerate)
      .def_readonly("cap", &IdEstimate::cap)
      .def_readonly("n_points_used", &IdEstimate::n_points_used)
      .def("__repr__", [](const IdEstimate& e) {
        return "IdEstimate(dimension=" + std::to_string(e.dimension) +
               ", alpha=" + std::to_string(e.alpha_used) +
               ", saturated=" + (e.saturated ? std::string("True") : "False") + ")";
      });

  py::class_<PreprocessedCloud>(m, "PreprocessedCloud")
      .def_readonly("points", &PreprocessedCloud::points)
      .def_readonly("retained_eigenvalues", &PreprocessedCloud::retained_eigenvalues)
      .def_readonly("mean_vector", &PreprocessedCloud::mean_vector)
      .def_readonly("dropped_point_indices", &PreprocessedCloud::dropped_point_indices);

  m.def("lambert_w0", &lambert_w0, py::arg("x"),
        "Principal real branch of the Lambert W function");
  m.def("p_ref", &p_ref, py::arg("n"), py::arg("alpha"),
        "Reference inseparability probability of the uniform n-sphere");
  m.def("n_from_p", &n_from_p, py::arg("p"), py::arg("alpha"),
        "Dimension whose reference inseparability equals p");
  m.def("max_dim_pointwise", &max_dim_pointwise, py::arg("n_points"), py::arg("alpha"));
  m.def("max_dim_global", &max_dim_global, py::arg("n_points"), py::arg("alpha"));

  m.def(
      "preprocess",
      [](const DataMatrix& data, double condition_threshold, bool project_to_sphere) {
        return preprocess_pipeline(data, config_from(condition_threshold, project_to_sphere));
      },
      py::arg("data"), py::arg("condition_threshold") = 10.0,
      py::arg("project_to_sphere") = true,
      "Center, PCA-reduce, whiten and optionally project to the unit sphere");

  m.def(
      "separability_profile",
      [](const DataMatrix& data, const std::optional<std::vector<double>>& alphas,
         double condition_threshold, bool project_to_sphere, int threads) {
        const auto cloud =
            preprocess_pipeline(data, config_from(condition_threshold, project_to_sphere));
        const auto profile = inseparability_fractions(cloud, grid_from(alphas), threads);
        return py::make_tuple(profile.alphas, profile.point_p, profile.mean_p);
      },
      py::arg("data"), py::arg("alphas") = std::nullopt,
      py::arg("condition_threshold") = 10.0, py::arg("project_to_sphere") = true,
      py::arg("threads") = 1,
      "Returns (alphas, point_p[alpha][point], mean_p) for raw data");

  m.def(
      "global_id",
      [](const DataMatrix& data, const std::optional<std::vector<double>>& alphas,
         double condition_threshold, bool project_to_sphere, int threads) {
        const auto cloud =
            preprocess_pipeline(data, config_from(condition_threshold, project_to_sphere));
        return fisher_global_id(cloud, grid_from(alphas), threads).first;
      },
      py::arg("data"), py::arg("alphas") = std::nullopt,
      py::arg("condition_threshold") = 10.0, py::arg("project_to_sphere") = true,
      py::arg("threads") = 1, "Global separability-based intrinsic dimension");

  m.def(
      "alpha_profile",
      [](const DataMatrix& data, const std::optional<std::vector<double>>& alphas,
         double condition_threshold, bool project_to_sphere, int threads) {
        const auto cloud =
            preprocess_pipeline(data, config_from(condition_threshold, project_to_sphere));
        const auto [estimate, profile] =
            fisher_global_id(cloud, grid_from(alphas), threads);
        return py::make_tuple(profile.per_alpha, profile.selected_index);
      },
      py::arg("data"), py::arg("alphas") = std::nullopt,
      py::arg("condition_threshold") = 10.0, py::arg("project_to_sphere") = true,
      py::arg("threads") = 1,
      "Per-alpha diagnostic estimates: (list of IdEstimate, selected index)");

  m.def(
      "pointwise_id",
      [](const DataMatrix& data, const std::optional<std::vector<double>>& alphas,
         std::optional<double> alpha, double condition_threshold,
         bool project_to_sphere, int threads) {
        const auto cloud =
            preprocess_pipeline(data, config_from(condition_threshold, project_to_sphere));
        return fisher_pointwise_id(cloud, grid_from(alphas), alpha, threads);
      },
      py::arg("data"), py::arg("alphas") = std::nullopt, py::arg("alpha") = std::nullopt,
      py::arg("condition_threshold") = 10.0, py::arg("project_to_sphere") = true,
      py::arg("threads") = 1,
      "Per-point global pointwise intrinsic dimension (cloud order, dropped "
      "points excluded)");

  m.def(
      "local_knn_id",
      [](const DataMatrix& data, Index k, const std::optional<std::vector<double>>& alphas,
         double condition_threshold, int threads) {
        return fisher_local_knn_id(data, k, config_from(condition_threshold, true),
                                   grid_from(alphas), threads);
      },
      py::arg("data"), py::arg("k") = 100, py::arg("alphas") = std::nullopt,
      py::arg("condition_threshold") = 10.0, py::arg("threads") = 1,
      "Per-point local kNN intrinsic dimension");

  m.def(
      "knn",
      [](const DataMatrix& data, Index k, int threads) {
        const auto graph = knn(data, k, threads);
        return py::make_tuple(graph.indices, graph.distances);
      },
      py::arg("data"), py::arg("k"), py::arg("threads") = 1,
      "Exact kNN graph: (indices, distances)");

  m.def(
      "mle_id",
      [](const DataMatrix& data, Index k, int threads) {
        const auto result = mle_id(data, k, threads);
        return py::make_tuple(result.global, result.local, result.skipped);
      },
      py::arg("data"), py::arg("k") = 20, py::arg("threads") = 1,
      "Levina-Bickel MLE: (global, per_point, skipped)");

  m.def(
      "correlation_dimension",
      [](const DataMatrix& data, double q_low, double q_high) {
        const auto result = correlation_dimension(data, {q_low, q_high});
        return py::make_tuple(result.dimension, result.fit_residual, result.n_radii);
      },
      py::arg("data"), py::arg("q_low") = 0.05, py::arg("q_high") = 0.5,
      "Correlation dimension: (dimension, fit_residual, n_radii)");

  m.def(
      "twonn_id",
      [](const DataMatrix& data, double discard_fraction, int threads) {
        const auto result = twonn_id(data, discard_fraction, threads);
        return py::make_tuple(result.dimension, result.skipped);
      },
      py::arg("data"), py::arg("discard_fraction") = 0.1, py::arg("threads") = 1,
      "TwoNN estimator: (dimension, skipped)");

  m.def("sample_ball", &sample_ball, py::arg("n"), py::arg("count"), py::arg("seed"));
  m.def("sample_sphere", &sample_sphere, py::arg("ambient_dim"), py::arg("count"),
        py::arg("seed"));
  m.def("sample_cube", &sample_cube, py::arg("n"), py::arg("count"), py::arg("seed"));
  m.def("sample_gaussian", &sample_gaussian, py::arg("n"), py::arg("count"),
        py::arg("seed"));
  m.def("swiss_roll", &swiss_roll, py::arg("count"), py::arg("seed"),
        py::arg("noise") = 0.0);
  m.def("ten_balls", &ten_balls, py::arg("points_per_ball") = 500, py::arg("seed") = 0,
        "Ten unit balls of dimensions 2..11 in R^11: (points, labels)");

  m.attr("__version__") = "0.1.0";
}
