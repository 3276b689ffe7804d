#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fisherid/baselines.hpp"
#include "fisherid/benchmark.hpp"
#include "fisherid/fisher.hpp"
#include "fisherid/io.hpp"
#include "fisherid/parallel.hpp"
#include "fisherid/preprocess.hpp"
#include "fisherid/rng.hpp"
#include "fisherid/separability.hpp"
#include "fisherid/synthdata.hpp"
#include "fisherid/types.hpp"

namespace {

using fisherid::Index;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitDegenerate = 3;

// "0.6:0.98:0.02" (inclusive range) or "0.6,0.7,0.8"; empty -> default grid.
fisherid::AlphaGrid parse_alphas(const std::string& spec) {
  if (spec.empty()) return fisherid::AlphaGrid::default_grid();
  std::vector<double> values;
  const auto rounded = [](double v) { return std::round(v * 1e12) / 1e12; };
  if (spec.find(':') != std::string::npos) {
    double start = 0, end = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> end >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !(step > 0)) {
      throw std::invalid_argument("bad alpha range (want start:end:step): " + spec);
    }
    const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) values.push_back(rounded(start + i * step));
  } else {
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) values.push_back(rounded(std::stod(token)));
  }
  return fisherid::AlphaGrid(std::move(values));
}

std::vector<Index> parse_sizes(const std::string& spec) {
  std::vector<Index> sizes;
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    sizes.push_back(static_cast<Index>(std::stoll(token)));
  }
  if (sizes.empty()) throw std::invalid_argument("no sizes given");
  return sizes;
}

std::vector<std::string> split_csv(const std::string& spec) {
  std::vector<std::string> out;
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

std::pair<double, double> parse_quantile_pair(const std::string& spec) {
  const auto parts = split_csv(spec);
  if (parts.size() != 2) {
    throw std::invalid_argument("want two comma-separated quantiles: " + spec);
  }
  return {std::stod(parts[0]), std::stod(parts[1])};
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    fisherid::write_text_atomic(path, content);
  }
}

double json_safe(double v) { return v; }  // nlohmann maps non-finite to null

json estimate_to_json(const fisherid::IdEstimate& e) {
  json out;
  if (e.degenerate) {
    out["dimension"] = nullptr;
    out["degenerate"] = true;
  } else {
    out["dimension"] = json_safe(e.dimension);
    out["alpha"] = e.alpha_used;
    out["saturated"] = e.saturated;
    out["cap"] = e.cap;
  }
  out["n_points"] = e.n_points_used;
  return out;
}

// ---------------------------------------------------------------- estimate

struct EstimateOptions {
  std::string input;
  std::string estimators = "fishers";
  std::string alphas;
  double condition_threshold = 10.0;
  bool no_sphere = false;
  bool pointwise = false;
  bool local = false;
  Index k = 100;
  Index mle_k = 20;
  std::string cd_quantiles = "0.05,0.5";
  double twonn_discard = 0.1;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output;
};

int run_estimate(const EstimateOptions& opt) {
  const fisherid::ParsedTable table = fisherid::read_table(opt.input);
  const fisherid::AlphaGrid alphas = parse_alphas(opt.alphas);
  const int threads = fisherid::resolve_thread_count(opt.threads);
  const fisherid::PreprocessConfig preprocess_config{opt.condition_threshold,
                                                     !opt.no_sphere};
  const auto estimator_ids = split_csv(opt.estimators);

  json report;
  report["command"] = "estimate";
  report["config"] = {{"input", opt.input},
                      {"estimators", estimator_ids},
                      {"alphas", alphas.values()},
                      {"condition_threshold", opt.condition_threshold},
                      {"project_to_sphere", !opt.no_sphere},
                      {"pointwise", opt.pointwise},
                      {"local", opt.local},
                      {"k", opt.k},
                      {"mle_k", opt.mle_k},
                      {"cd_quantiles", opt.cd_quantiles},
                      {"twonn_discard", opt.twonn_discard},
                      {"seed", opt.seed}};
  // Thread count is not echoed: results are identical for any value.
  report["input"] = {{"path", opt.input},
                     {"rows", table.values.rows()},
                     {"cols", table.values.cols()},
                     {"had_header", table.had_header}};
  json estimates = json::object();

  for (const std::string& id : estimator_ids) {
    if (id == "fishers") {
      const fisherid::PreprocessedCloud cloud =
          fisherid::preprocess_pipeline(table.values, preprocess_config);
      report["preprocessing"] = {
          {"retained_components", cloud.retained_eigenvalues.size()},
          {"eigenvalues", cloud.retained_eigenvalues},
          {"dropped_point_indices", cloud.dropped_point_indices},
          {"points_used", cloud.points.rows()}};

      const auto [global, profile] = fisherid::fisher_global_id(cloud, alphas, threads);
      json block;
      block["global"] = estimate_to_json(global);
      bool fully_separable = true;
      json alpha_profile = json::array();
      for (std::size_t a = 0; a < profile.per_alpha.size(); ++a) {
        fully_separable = fully_separable && profile.per_alpha[a].saturated;
        json row = estimate_to_json(profile.per_alpha[a]);
        row["selected"] = a == profile.selected_index;
        alpha_profile.push_back(std::move(row));
      }
      block["fully_separable"] = fully_separable;
      block["alpha_profile"] = std::move(alpha_profile);

      if (opt.pointwise) {
        const auto pointwise =
            fisherid::fisher_pointwise_id(cloud, alphas, {}, threads);
        // Re-align to input row order; dropped rows become null entries.
        json rows = json::array();
        std::size_t next_dropped = 0;
        std::size_t cloud_row = 0;
        for (Index i = 0; i < table.values.rows(); ++i) {
          if (next_dropped < cloud.dropped_point_indices.size() &&
              cloud.dropped_point_indices[next_dropped] == i) {
            rows.push_back({{"dimension", nullptr}, {"dropped", "zero_vector"}});
            ++next_dropped;
          } else {
            rows.push_back(estimate_to_json(pointwise[cloud_row++]));
          }
        }
        block["pointwise"] = std::move(rows);
      }

      if (opt.local) {
        json rows = json::array();
        for (const fisherid::IdEstimate& e : fisherid::fisher_local_knn_id(
                 table.values, opt.k, preprocess_config, alphas, threads)) {
          rows.push_back(estimate_to_json(e));
        }
        block["local"] = std::move(rows);
      }
      estimates["fishers"] = std::move(block);
    } else if (id == "mle") {
      const fisherid::MleResult mle =
          fisherid::mle_id(table.values, opt.mle_k, threads);
      json block = {{"global", mle.global},
                    {"k", opt.mle_k},
                    {"skipped_points", mle.skipped}};
      if (opt.local || opt.pointwise) {
        json locals = json::array();
        for (double v : mle.local) locals.push_back(json_safe(v));
        block["local"] = std::move(locals);
      }
      estimates["mle"] = std::move(block);
    } else if (id == "cd") {
      const auto cd = fisherid::correlation_dimension(
          table.values, parse_quantile_pair(opt.cd_quantiles));
      estimates["cd"] = {{"dimension", cd.dimension},
                         {"fit_residual", cd.fit_residual},
                         {"n_radii", cd.n_radii}};
    } else if (id == "twonn") {
      const auto twonn = fisherid::twonn_id(table.values, opt.twonn_discard, threads);
      estimates["twonn"] = {{"dimension", twonn.dimension},
                            {"skipped_points", twonn.skipped}};
    } else {
      throw std::invalid_argument("unknown estimator: " + id);
    }
  }

  report["estimates"] = std::move(estimates);
  emit(opt.output, report.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::string kind;
  Index n = 2;
  Index count = 1000;
  std::optional<Index> ambient;
  std::uint64_t seed = 0;
  double noise = 0.0;
  Index points_per_ball = 500;
  bool no_header = false;
  std::string output;
};

std::string sidecar_path(const std::string& output) {
  std::filesystem::path p(output);
  p.replace_extension();
  p += ".meta.json";
  return p.string();
}

int run_generate(const GenerateOptions& opt) {
  fisherid::GeneratorSpec spec;
  spec.kind = fisherid::dataset_kind_from_string(opt.kind);
  spec.n = opt.n;
  spec.count = opt.count;
  spec.ambient = opt.ambient;
  spec.seed = opt.seed;
  spec.noise = opt.noise;
  spec.points_per_ball = opt.points_per_ball;

  const fisherid::GeneratedDataset dataset = fisherid::generate(spec);

  std::vector<std::string> names;
  if (!opt.no_header) {
    for (Index c = 0; c < dataset.points.cols(); ++c) {
      names.push_back("x" + std::to_string(c));
    }
  }
  const std::vector<int>* labels = dataset.labels.empty() ? nullptr : &dataset.labels;
  fisherid::write_table_csv(opt.output, dataset.points, names, labels);

  json meta;
  meta["kind"] = fisherid::to_string(spec.kind);
  meta["n"] = spec.n;
  meta["count"] = dataset.points.rows();
  meta["cols"] = dataset.points.cols();
  if (spec.ambient) meta["ambient"] = *spec.ambient;
  meta["seed"] = spec.seed;
  if (spec.kind == fisherid::DatasetKind::swiss_roll) meta["noise"] = spec.noise;
  if (spec.kind == fisherid::DatasetKind::ten_balls) {
    meta["points_per_ball"] = spec.points_per_ball;
    meta["label_column"] = true;
  }
  meta["rng"] = fisherid::kRngVersion;
  meta["header"] = !opt.no_header;
  fisherid::write_text_atomic(sidecar_path(opt.output), meta.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string input;
  std::string alphas;
  double condition_threshold = 10.0;
  bool no_sphere = false;
  int threads = 0;
  std::string output;
  std::string histogram;
};

int run_sweep(const SweepOptions& opt) {
  const fisherid::ParsedTable table = fisherid::read_table(opt.input);
  const fisherid::AlphaGrid alphas = parse_alphas(opt.alphas);
  const int threads = fisherid::resolve_thread_count(opt.threads);
  const fisherid::AlphaSweepReport report = fisherid::alpha_sweep_report(
      table.values, alphas, {opt.condition_threshold, !opt.no_sphere}, threads);

  std::ostringstream out;
  out << "alpha,mean_p,dimension,saturated,selected,cap,n_points,retained_components,"
         "fully_separable\n";
  for (const auto& row : report.rows) {
    out << fisherid::format_double(row.alpha) << ','
        << fisherid::format_double(row.mean_p) << ','
        << fisherid::format_double(row.dimension) << ',' << (row.saturated ? 1 : 0)
        << ',' << (row.selected ? 1 : 0) << ',' << fisherid::format_double(row.cap)
        << ',' << report.n_points_used << ',' << report.retained_components << ','
        << (report.fully_separable ? 1 : 0) << '\n';
  }
  emit(opt.output, out.str());

  if (!opt.histogram.empty()) {
    std::ostringstream hist;
    hist << "alpha,bin_low,bin_high,count\n";
    for (std::size_t a = 0; a < report.rows.size(); ++a) {
      const double alpha = report.rows[a].alpha;
      const auto& bins = report.histograms[a];
      hist << fisherid::format_double(alpha) << ",0,0," << bins[0] << '\n';
      for (std::size_t b = 1; b < bins.size(); ++b) {
        const double low = static_cast<double>(b - 1) / 20.0;
        const double high = static_cast<double>(b) / 20.0;
        hist << fisherid::format_double(alpha) << ','
             << fisherid::format_double(low) << ',' << fisherid::format_double(high)
             << ',' << bins[b] << '\n';
      }
    }
    fisherid::write_text_atomic(opt.histogram, hist.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- caps

struct CapsOptions {
  std::string alphas;
  std::string sizes;
  std::string output;
};

int run_caps(const CapsOptions& opt) {
  const fisherid::AlphaGrid alphas = parse_alphas(opt.alphas);
  const auto rows = fisherid::cap_curves(alphas, parse_sizes(opt.sizes));
  std::ostringstream out;
  out << "alpha,n_points,cap_pointwise,cap_global\n";
  for (const auto& row : rows) {
    out << fisherid::format_double(row.alpha) << ',' << row.n_points << ','
        << fisherid::format_double(row.cap_pointwise) << ','
        << fisherid::format_double(row.cap_global) << '\n';
  }
  emit(opt.output, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkOptions {
  std::string kinds;
  std::vector<std::string> inputs;
  Index base_count = 0;  // 0 -> max(sizes)
  std::string sizes;
  int repeats = 10;
  Index k_local = 100;
  std::string estimators = "fishers,mle,cd,twonn";
  std::uint64_t seed = 0;
  std::string alphas;
  double condition_threshold = 10.0;
  Index mle_k = 20;
  std::string cd_quantiles = "0.05,0.5";
  double twonn_discard = 0.1;
  double noise = 0.0;
  Index points_per_ball = 500;
  bool timings = false;
  int threads = 0;
  std::string output;
};

// "ball:5" -> (ball, 5); "swiss_roll" -> (swiss_roll, default).
std::pair<std::string, fisherid::GeneratorSpec> parse_kind_spec(
    const std::string& token, const BenchmarkOptions& opt, std::size_t index) {
  fisherid::GeneratorSpec spec;
  std::string kind = token;
  std::string id = token;
  const auto colon = token.find(':');
  if (colon != std::string::npos) {
    kind = token.substr(0, colon);
    spec.n = static_cast<Index>(std::stoll(token.substr(colon + 1)));
    id = kind + token.substr(colon + 1);
  }
  spec.kind = fisherid::dataset_kind_from_string(kind);
  spec.count = opt.base_count;
  spec.seed = opt.seed + index;  // one substream family per dataset
  spec.noise = opt.noise;
  spec.points_per_ball = opt.points_per_ball;
  return {id, spec};
}

json record_to_json(const fisherid::BenchmarkRecord& r, bool timings) {
  json out = {{"dataset_id", r.dataset_id},
              {"estimator_id", r.estimator_id},
              {"subsample_size", r.subsample_size},
              {"repeat_index", r.repeat_index},
              {"global_id", json_safe(r.global_id)},
              {"mean_local_id", json_safe(r.mean_local_id)},
              {"mean_pointwise_id", json_safe(r.mean_pointwise_id)},
              {"global_saturated", r.global_saturated},
              {"local_skipped", r.local_skipped}};
  if (timings) out["runtime_seconds"] = r.runtime_seconds;
  return out;
}

json summary_to_json(const fisherid::SummaryCell& s) {
  return {{"dataset_id", s.dataset_id},
          {"estimator_id", s.estimator_id},
          {"subsample_size", s.subsample_size},
          {"repeats", s.repeats},
          {"global_mean", json_safe(s.global_mean)},
          {"global_lo", json_safe(s.global_lo)},
          {"global_hi", json_safe(s.global_hi)},
          {"local_mean", json_safe(s.local_mean)},
          {"local_lo", json_safe(s.local_lo)},
          {"local_hi", json_safe(s.local_hi)},
          {"pointwise_mean", json_safe(s.pointwise_mean)},
          {"pointwise_lo", json_safe(s.pointwise_lo)},
          {"pointwise_hi", json_safe(s.pointwise_hi)}};
}

int run_benchmark(const BenchmarkOptions& opt) {
  fisherid::SubsampleOptions options;
  options.sizes = parse_sizes(opt.sizes);
  options.repeats = opt.repeats;
  options.k_local = opt.k_local;
  options.seed = opt.seed;
  options.estimators = split_csv(opt.estimators);
  options.alphas = parse_alphas(opt.alphas);
  options.preprocess = {opt.condition_threshold, true};
  options.baselines.mle_k = opt.mle_k;
  options.baselines.cd_radius_quantiles = parse_quantile_pair(opt.cd_quantiles);
  options.baselines.twonn_discard_fraction = opt.twonn_discard;
  options.threads = fisherid::resolve_thread_count(opt.threads);

  BenchmarkOptions effective = opt;
  if (effective.base_count == 0) {
    effective.base_count = *std::max_element(options.sizes.begin(), options.sizes.end());
  }

  struct NamedDataset {
    std::string id;
    fisherid::DataMatrix points;
  };
  std::vector<NamedDataset> datasets;
  std::size_t kind_index = 0;
  for (const std::string& token : split_csv(opt.kinds)) {
    auto [id, spec] = parse_kind_spec(token, effective, kind_index++);
    datasets.push_back({id, fisherid::generate(spec).points});
  }
  for (const std::string& path : opt.inputs) {
    datasets.push_back(
        {std::filesystem::path(path).stem().string(), fisherid::read_table(path).values});
  }
  if (datasets.empty()) {
    throw std::invalid_argument("benchmark: no datasets (use --kinds or --input)");
  }

  fisherid::ExperimentReport merged;
  for (const NamedDataset& dataset : datasets) {
    fisherid::ExperimentReport report =
        fisherid::subsample_experiment(dataset.points, dataset.id, options);
    merged.records.insert(merged.records.end(), report.records.begin(),
                          report.records.end());
    merged.summary.insert(merged.summary.end(), report.summary.begin(),
                          report.summary.end());
  }
  std::sort(merged.records.begin(), merged.records.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.dataset_id, a.estimator_id, a.subsample_size,
                              a.repeat_index) <
                     std::tie(b.dataset_id, b.estimator_id, b.subsample_size,
                              b.repeat_index);
            });
  std::sort(merged.summary.begin(), merged.summary.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.dataset_id, a.estimator_id, a.subsample_size) <
                     std::tie(b.dataset_id, b.estimator_id, b.subsample_size);
            });

  json report;
  report["command"] = "benchmark";
  report["config"] = {{"kinds", opt.kinds},
                      {"inputs", opt.inputs},
                      {"base_count", effective.base_count},
                      {"sizes", options.sizes},
                      {"repeats", options.repeats},
                      {"k_local", options.k_local},
                      {"estimators", options.estimators},
                      {"seed", options.seed},
                      {"alphas", options.alphas.values()},
                      {"condition_threshold", opt.condition_threshold},
                      {"mle_k", opt.mle_k},
                      {"cd_quantiles", opt.cd_quantiles},
                      {"twonn_discard", opt.twonn_discard},
                      {"rng", fisherid::kRngVersion}};
  json records = json::array();
  for (const auto& r : merged.records) records.push_back(record_to_json(r, opt.timings));
  report["records"] = std::move(records);
  json summary = json::array();
  for (const auto& s : merged.summary) summary.push_back(summary_to_json(s));
  report["summary"] = std::move(summary);
  fisherid::write_text_atomic(opt.output + ".json", report.dump(2) + "\n");

  std::ostringstream records_csv;
  records_csv << "dataset_id,estimator_id,subsample_size,repeat_index,global_id,"
                 "mean_local_id,mean_pointwise_id,global_saturated,local_skipped";
  if (opt.timings) records_csv << ",runtime_seconds";
  records_csv << '\n';
  for (const auto& r : merged.records) {
    records_csv << r.dataset_id << ',' << r.estimator_id << ',' << r.subsample_size
                << ',' << r.repeat_index << ',' << fisherid::format_double(r.global_id)
                << ',' << fisherid::format_double(r.mean_local_id) << ','
                << fisherid::format_double(r.mean_pointwise_id) << ','
                << (r.global_saturated ? 1 : 0) << ',' << (r.local_skipped ? 1 : 0);
    if (opt.timings) records_csv << ',' << fisherid::format_double(r.runtime_seconds);
    records_csv << '\n';
  }
  fisherid::write_text_atomic(opt.output + "_records.csv", records_csv.str());

  std::ostringstream summary_csv;
  summary_csv << "dataset_id,estimator_id,subsample_size,repeats,global_mean,global_lo,"
                 "global_hi,local_mean,local_lo,local_hi,pointwise_mean,pointwise_lo,"
                 "pointwise_hi\n";
  for (const auto& s : merged.summary) {
    summary_csv << s.dataset_id << ',' << s.estimator_id << ',' << s.subsample_size
                << ',' << s.repeats << ',' << fisherid::format_double(s.global_mean)
                << ',' << fisherid::format_double(s.global_lo) << ','
                << fisherid::format_double(s.global_hi) << ','
                << fisherid::format_double(s.local_mean) << ','
                << fisherid::format_double(s.local_lo) << ','
                << fisherid::format_double(s.local_hi) << ','
                << fisherid::format_double(s.pointwise_mean) << ','
                << fisherid::format_double(s.pointwise_lo) << ','
                << fisherid::format_double(s.pointwise_hi) << '\n';
  }
  fisherid::write_text_atomic(opt.output + "_summary.csv", summary_csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic dimension estimation from Fisher separability statistics"};
  app.require_subcommand(1);

  EstimateOptions estimate;
  CLI::App* cmd_estimate =
      app.add_subcommand("estimate", "Estimate intrinsic dimension of a table");
  cmd_estimate->add_option("--input", estimate.input, "Input table (csv/tsv)")
      ->required();
  cmd_estimate->add_option("--estimator", estimate.estimators,
                           "Comma list of fishers,mle,cd,twonn");
  cmd_estimate->add_option("--alphas", estimate.alphas,
                           "Alpha grid: list 0.6,0.7 or range 0.6:0.98:0.02");
  cmd_estimate->add_option("--C", estimate.condition_threshold,
                           "Spectral cutoff condition threshold");
  cmd_estimate->add_flag("--no-sphere", estimate.no_sphere,
                         "Skip the unit-sphere projection");
  cmd_estimate->add_flag("--pointwise", estimate.pointwise,
                         "Emit per-point global pointwise estimates");
  cmd_estimate->add_flag("--local", estimate.local, "Emit per-point local kNN estimates");
  cmd_estimate->add_option("--k", estimate.k, "Neighborhood size for --local");
  cmd_estimate->add_option("--mle-k", estimate.mle_k, "Neighbors for the MLE baseline");
  cmd_estimate->add_option("--cd-quantiles", estimate.cd_quantiles,
                           "Distance quantiles for the correlation dimension fit");
  cmd_estimate->add_option("--twonn-discard", estimate.twonn_discard,
                           "Fraction of largest ratios discarded by TwoNN");
  cmd_estimate->add_option("--seed", estimate.seed, "Seed echoed into the report");
  cmd_estimate->add_option("--threads", estimate.threads,
                           "Worker threads (0 = FISHERID_THREADS or hardware)");
  cmd_estimate->add_option("--output", estimate.output, "Report path (default stdout)");

  GenerateOptions generate;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "Generate a synthetic dataset");
  cmd_generate
      ->add_option("--kind", generate.kind,
                   "ball, sphere, cube, gaussian, swiss_roll or ten_balls")
      ->required();
  cmd_generate->add_option("--n", generate.n,
                           "Intrinsic dimension (sphere: S^n embedded in R^{n+1})");
  cmd_generate->add_option("--N", generate.count, "Number of points");
  cmd_generate->add_option("--ambient", [&generate](const auto& results) {
    generate.ambient = static_cast<Index>(std::stoll(results[0]));
    return true;
  }, "Zero-padded embedding dimension");
  cmd_generate->add_option("--seed", generate.seed, "Generator seed");
  cmd_generate->add_option("--noise", generate.noise, "Swiss roll noise sigma");
  cmd_generate->add_option("--points-per-ball", generate.points_per_ball,
                           "Points per ball for ten_balls");
  cmd_generate->add_flag("--no-header", generate.no_header, "Omit the CSV header row");
  cmd_generate->add_option("--output", generate.output, "Output CSV path")->required();

  SweepOptions sweep;
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "Per-alpha separability diagnostics for a table");
  cmd_sweep->add_option("--input", sweep.input, "Input table")->required();
  cmd_sweep->add_option("--alphas", sweep.alphas, "Alpha grid");
  cmd_sweep->add_option("--C", sweep.condition_threshold, "Spectral cutoff threshold");
  cmd_sweep->add_flag("--no-sphere", sweep.no_sphere, "Skip the unit-sphere projection");
  cmd_sweep->add_option("--threads", sweep.threads, "Worker threads");
  cmd_sweep->add_option("--output", sweep.output, "CSV path (default stdout)");
  cmd_sweep->add_option("--histogram", sweep.histogram,
                        "Optional CSV of per-alpha point_p histograms");

  CapsOptions caps;
  CLI::App* cmd_caps =
      app.add_subcommand("caps", "Tabulate maximal measurable dimensions");
  cmd_caps->add_option("--alphas", caps.alphas, "Alpha grid");
  cmd_caps->add_option("--sizes", caps.sizes, "Comma list of sample sizes")->required();
  cmd_caps->add_option("--output", caps.output, "CSV path (default stdout)");

  BenchmarkOptions benchmark;
  CLI::App* cmd_benchmark = app.add_subcommand(
      "benchmark", "Subsample-size experiment across estimators and datasets");
  cmd_benchmark->add_option("--kinds", benchmark.kinds,
                            "Comma list of generator specs, e.g. ball:5,swiss_roll");
  cmd_benchmark->add_option("--input", benchmark.inputs,
                            "Dataset tables to include (repeatable)");
  cmd_benchmark->add_option("--N", benchmark.base_count,
                            "Generated dataset size (default max of --sizes)");
  cmd_benchmark->add_option("--sizes", benchmark.sizes, "Subsample sizes")->required();
  cmd_benchmark->add_option("--repeats", benchmark.repeats, "Repeats per size");
  cmd_benchmark->add_option("--k", benchmark.k_local, "Local neighborhood size");
  cmd_benchmark->add_option("--estimator", benchmark.estimators, "Estimators to run");
  cmd_benchmark->add_option("--seed", benchmark.seed, "Base seed");
  cmd_benchmark->add_option("--alphas", benchmark.alphas, "Alpha grid");
  cmd_benchmark->add_option("--C", benchmark.condition_threshold,
                            "Spectral cutoff threshold");
  cmd_benchmark->add_option("--mle-k", benchmark.mle_k, "Neighbors for MLE");
  cmd_benchmark->add_option("--cd-quantiles", benchmark.cd_quantiles,
                            "Correlation dimension quantiles");
  cmd_benchmark->add_option("--twonn-discard", benchmark.twonn_discard,
                            "TwoNN discard fraction");
  cmd_benchmark->add_option("--noise", benchmark.noise, "Swiss roll noise sigma");
  cmd_benchmark->add_option("--points-per-ball", benchmark.points_per_ball,
                            "Points per ball for ten_balls");
  cmd_benchmark->add_flag("--timings", benchmark.timings,
                          "Include wall-clock runtimes in outputs");
  cmd_benchmark->add_option("--threads", benchmark.threads, "Worker threads");
  cmd_benchmark->add_option("--output", benchmark.output, "Output path prefix")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_estimate->parsed()) return run_estimate(estimate);
    if (cmd_generate->parsed()) return run_generate(generate);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_caps->parsed()) return run_caps(caps);
    if (cmd_benchmark->parsed()) return run_benchmark(benchmark);
  } catch (const fisherid::InvalidDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const fisherid::DegenerateDataError& e) {
    std::cerr << "error: degenerate data: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
