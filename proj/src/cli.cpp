#include "stereogen/cli.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stereogen/artifacts.hpp"
#include "stereogen/config.hpp"
#include "stereogen/csv.hpp"
#include "stereogen/errors.hpp"
#include "stereogen/numformat.hpp"
#include "stereogen/rng.hpp"

namespace stereogen {

namespace {

/// Flag values; empty/absent means "use the config value".
struct CommonOptions {
  std::string config_path;
  std::string ratings;
  std::string catalog;
  std::string output_dir;
  std::vector<std::string> features;
  std::int64_t min_count = 0;
  std::string delimiter;
  std::string metric;
  std::string linkage;
  std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Config file (TOML-style)");
  cmd->add_option("--ratings", o.ratings, "Ratings CSV path");
  cmd->add_option("--catalog", o.catalog, "Catalog CSV/JSON path");
  cmd->add_option("--output-dir", o.output_dir, "Artifact directory");
  cmd->add_option("--feature", o.features, "Complex feature name (repeatable)");
  cmd->add_option("--min-count", o.min_count, "Minimum label count for the selected features");
  cmd->add_option("--delimiter", o.delimiter, "Label delimiter inside catalog cells");
  cmd->add_option("--metric", o.metric, "Dissimilarity metric: linear or quadratic");
  cmd->add_option("--linkage", o.linkage, "Linkage: single, complete or ward");
  cmd->add_option("--seed", o.seed, "Root seed");
}

PipelineConfig resolve_config(const CommonOptions& o) {
  PipelineConfig cfg =
      o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
  if (!o.ratings.empty()) cfg.ratings_path = o.ratings;
  if (!o.catalog.empty()) cfg.catalog_path = o.catalog;
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  if (!o.metric.empty()) cfg.metric = metric_from_string(o.metric);
  if (!o.linkage.empty()) cfg.linkage = linkage_from_string(o.linkage);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.features.empty()) {
    std::vector<FeatureConfig> selected;
    for (const auto& name : o.features) {
      FeatureConfig feature;
      feature.name = name;
      for (const auto& existing : cfg.features)
        if (existing.name == name) feature = existing;
      selected.push_back(feature);
    }
    cfg.features = std::move(selected);
  }
  if (o.min_count > 0)
    for (auto& feature : cfg.features) feature.min_count = o.min_count;
  if (!o.delimiter.empty()) {
    if (o.delimiter.size() != 1) throw ConfigError("--delimiter must be a single character");
    for (auto& feature : cfg.features) feature.delimiter = o.delimiter.front();
  }
  if (cfg.features.empty())
    throw ConfigError("no complex features configured (use --feature or a [feature.*] section)");
  if (cfg.catalog_path.empty()) throw ConfigError("no catalog path configured");
  return cfg;
}

std::vector<std::string> base_tags(const PipelineConfig& cfg, const std::string& feature) {
  return {feature, to_string(cfg.metric), to_string(cfg.linkage),
          "seed" + std::to_string(cfg.seed)};
}

ItemCatalog load_configured_catalog(const PipelineConfig& cfg) {
  std::vector<std::string> names;
  names.reserve(cfg.features.size());
  for (const auto& feature : cfg.features) names.push_back(feature.name);
  const char delimiter = cfg.features.front().delimiter;
  return load_catalog(cfg.catalog_path, names, delimiter);
}

struct FeatureStage {
  FeatureConfig feature;
  LabelVocabulary vocab;
  MultiHotMatrix encoded;
  CorrelationMatrix corr;
};

FeatureStage run_feature_stage(const ItemCatalog& catalog, const FeatureConfig& feature) {
  FeatureStage stage;
  stage.feature = feature;
  stage.vocab = build_vocabulary(catalog, feature.name, feature.min_count);
  stage.encoded = encode_multi_hot(catalog, stage.vocab);
  stage.corr = correlation(stage.encoded);
  return stage;
}

double mean_abs_offdiag(const SquareMatrix& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) total += std::abs(values.at(i, j));
  return total / static_cast<double>(n * (n - 1));
}

void warn_if_compressive(const PipelineConfig& cfg, const FeatureStage& stage) {
  if (cfg.metric != Metric::quadratic) return;
  const double mean_abs = mean_abs_offdiag(stage.corr.values);
  if (mean_abs < 0.4) {
    std::fprintf(stderr,
                 "warning: feature '%s': mean |R| = %s is below 0.4; the quadratic metric "
                 "tends to compress excessively toward 1.0 here\n",
                 stage.feature.name.c_str(), format_double(mean_abs).c_str());
  }
}

struct StereotypeStage {
  Dendrogram dendro;
  IterationSeries series;
  std::optional<std::size_t> cut;
  StereotypeSet set;
};

StereotypeStage run_stereotype_stage(const PipelineConfig& cfg, const FeatureStage& stage) {
  StereotypeStage out;
  const DissimilarityMatrix d = to_dissimilarity(stage.corr, cfg.metric);
  out.dendro = agglomerate(d, cfg.linkage);
  out.series = iteration_series(out.dendro);
  out.cut = find_cut(out.series);
  out.set = out.cut ? extract_stereotypes(out.dendro, *out.cut, stage.feature.name)
                    : singleton_stereotypes(stage.vocab.labels, stage.feature.name);
  return out;
}

void emit_ingest(const PipelineConfig& cfg, const ItemCatalog& catalog) {
  for (const auto& feature : cfg.features) {
    const FeatureStage stage = run_feature_stage(catalog, feature);
    write_file(artifact_path(cfg.output_dir, "vocab", base_tags(cfg, feature.name), ".csv"),
               vocab_csv(stage.vocab));
  }
  if (!cfg.ratings_path.empty()) {
    const RatingsTable ratings = load_ratings(cfg.ratings_path);
    std::printf("ratings: %zu records, %zu users\n", ratings.records.size(),
                ratings.user_stats.size());
  }
}

void emit_corr(const PipelineConfig& cfg, const ItemCatalog& catalog) {
  for (const auto& feature : cfg.features) {
    const FeatureStage stage = run_feature_stage(catalog, feature);
    write_file(artifact_path(cfg.output_dir, "corr", base_tags(cfg, feature.name), ".csv"),
               labeled_matrix_csv(stage.corr.labels, stage.corr.values));
    const Permutation perm = seriate_greedy(stage.corr);
    const CorrelationMatrix seriated = apply_permutation(stage.corr, perm.order);
    write_file(
        artifact_path(cfg.output_dir, "corr_seriated", base_tags(cfg, feature.name), ".csv"),
        labeled_matrix_csv(seriated.labels, seriated.values));
  }
}

void emit_cluster(const PipelineConfig& cfg, const ItemCatalog& catalog) {
  for (const auto& feature : cfg.features) {
    const FeatureStage stage = run_feature_stage(catalog, feature);
    warn_if_compressive(cfg, stage);
    const StereotypeStage st = run_stereotype_stage(cfg, stage);
    if (has_inversion(st.dendro))
      std::fprintf(stderr, "warning: feature '%s': dendrogram heights are not monotone\n",
                   feature.name.c_str());
    write_file(artifact_path(cfg.output_dir, "merges", base_tags(cfg, feature.name), ".csv"),
               merge_table_csv(st.dendro));
    write_file(artifact_path(cfg.output_dir, "dendrogram", base_tags(cfg, feature.name), ".dot"),
               dendrogram_dot(st.dendro, feature.name));
  }
}

void emit_stereotypes(const PipelineConfig& cfg, const ItemCatalog& catalog) {
  for (const auto& feature : cfg.features) {
    const FeatureStage stage = run_feature_stage(catalog, feature);
    const StereotypeStage st = run_stereotype_stage(cfg, stage);
    write_file(artifact_path(cfg.output_dir, "ratio", base_tags(cfg, feature.name), ".csv"),
               ratio_csv(st.series));
    StereotypeArtifact artifact{st.set, cfg.metric, cfg.linkage, cfg.seed, st.cut};
    write_file(artifact_path(cfg.output_dir, "stereotypes", base_tags(cfg, feature.name), ".json"),
               stereotypes_json(artifact));
  }
}

void emit_kmodes(const PipelineConfig& cfg, const ItemCatalog& catalog) {
  const std::uint64_t seed = cfg.resolved_kmodes_seed();
  for (const auto& feature : cfg.features) {
    const FeatureStage stage = run_feature_stage(catalog, feature);
    const std::vector<CategoricalRow> rows = rows_of(stage.encoded);
    for (const std::size_t k : cfg.kmodes_k) {
      const KModesModel model = fit(rows, k, cfg.kmodes_init, seed);
      write_file(artifact_path(cfg.output_dir, "kmodes",
                               {feature.name, "k" + std::to_string(k),
                                to_string(cfg.kmodes_init), "seed" + std::to_string(seed)},
                               ".json"),
                 kmodes_json(model, stage.encoded.col_labels, feature.name));
    }
    const auto scan = elbow_scan(rows, cfg.kmodes_k, cfg.kmodes_init, seed);
    write_file(artifact_path(cfg.output_dir, "kmodes_scan",
                             {feature.name, to_string(cfg.kmodes_init),
                              "seed" + std::to_string(seed)},
                             ".csv"),
               scan_csv(scan));
  }
}

std::string joined_feature_names(const PipelineConfig& cfg) {
  std::string out;
  for (const auto& feature : cfg.features) {
    if (!out.empty()) out += '+';
    out += feature.name;
  }
  return out;
}

std::vector<EvalReport> run_evaluations(const PipelineConfig& cfg, const ItemCatalog& catalog,
                                        const std::vector<SplitKind>& splits,
                                        const std::vector<FeatureMode>& modes) {
  if (cfg.ratings_path.empty()) throw ConfigError("no ratings path configured");
  const RatingsTable ratings = load_ratings(cfg.ratings_path);
  const std::uint64_t seed = cfg.resolved_eval_seed();

  std::vector<LabelVocabulary> vocabs;
  std::vector<StereotypeSet> stereotypes;
  for (const auto& feature : cfg.features) {
    const FeatureStage stage = run_feature_stage(catalog, feature);
    const StereotypeStage st = run_stereotype_stage(cfg, stage);
    vocabs.push_back(stage.vocab);
    stereotypes.push_back(st.set);
  }

  std::vector<EvalReport> reports;
  for (const SplitKind split : splits) {
    for (const FeatureMode mode : modes) {
      reports.push_back(cross_validate(ratings, catalog, split, mode, cfg.eval_folds, seed,
                                       vocabs, stereotypes, cfg.projection));
    }
  }

  const std::string features = joined_feature_names(cfg);
  for (const auto& report : reports) {
    write_file(artifact_path(cfg.output_dir, "eval",
                             {to_string(report.kind), to_string(report.mode), features,
                              to_string(cfg.metric), to_string(cfg.linkage),
                              "seed" + std::to_string(seed)},
                             ".json"),
               eval_json(report, cfg.metric, cfg.linkage));
  }
  write_file(artifact_path(cfg.output_dir, "eval_table",
                           {features, to_string(cfg.metric), to_string(cfg.linkage),
                            "seed" + std::to_string(seed)},
                           ".csv"),
             eval_table_csv(reports));
  return reports;
}

void emit_pipeline(const PipelineConfig& cfg, const ItemCatalog& catalog) {
  emit_ingest(cfg, catalog);
  emit_corr(cfg, catalog);
  emit_cluster(cfg, catalog);
  emit_stereotypes(cfg, catalog);
  run_evaluations(cfg, catalog, cfg.eval_splits, cfg.eval_modes);
}

int run_stage(const std::string& stage, const CommonOptions& options,
              const std::function<void(const PipelineConfig&, const ItemCatalog&)>& body) {
  try {
    const PipelineConfig cfg = resolve_config(options);
    const ItemCatalog catalog = load_configured_catalog(cfg);
    body(cfg, catalog);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "stereogen: stage %s failed: %s\n", stage.c_str(), e.what());
    return 1;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"stereotype generation for complex categorical features"};
  app.require_subcommand(1);
  int status = 0;

  CommonOptions ingest_opts;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build and write label vocabularies");
  add_common_options(ingest_cmd, ingest_opts);
  ingest_cmd->callback(
      [&] { status = run_stage("ingest", ingest_opts, emit_ingest); });

  CommonOptions corr_opts;
  auto* corr_cmd = app.add_subcommand("corr", "Write correlation and seriated matrices");
  add_common_options(corr_cmd, corr_opts);
  corr_cmd->callback([&] { status = run_stage("corr", corr_opts, emit_corr); });

  CommonOptions cluster_opts;
  auto* cluster_cmd = app.add_subcommand("cluster", "Write dendrogram merge tables and DOT files");
  add_common_options(cluster_cmd, cluster_opts);
  cluster_cmd->callback([&] { status = run_stage("cluster", cluster_opts, emit_cluster); });

  CommonOptions stereo_opts;
  auto* stereo_cmd =
      app.add_subcommand("stereotypes", "Write stereotype groups and the iteration-ratio series");
  add_common_options(stereo_cmd, stereo_opts);
  stereo_cmd->callback(
      [&] { status = run_stage("stereotypes", stereo_opts, emit_stereotypes); });

  CommonOptions kmodes_opts;
  std::vector<std::size_t> kmodes_k;
  std::string kmodes_init;
  std::optional<std::uint64_t> kmodes_seed;
  auto* kmodes_cmd = app.add_subcommand("kmodes", "Baseline k-modes clustering of the labels");
  add_common_options(kmodes_cmd, kmodes_opts);
  kmodes_cmd->add_option("--k", kmodes_k, "Cluster counts to scan (repeatable)");
  kmodes_cmd->add_option("--init", kmodes_init, "Initialization: huang or cao");
  kmodes_cmd->add_option("--kmodes-seed", kmodes_seed, "Seed for the k-modes stage");
  kmodes_cmd->callback([&] {
    status = run_stage("kmodes", kmodes_opts, [&](const PipelineConfig& base,
                                                  const ItemCatalog& catalog) {
      PipelineConfig cfg = base;
      if (!kmodes_k.empty()) cfg.kmodes_k = kmodes_k;
      if (!kmodes_init.empty()) cfg.kmodes_init = init_from_string(kmodes_init);
      if (kmodes_seed) cfg.kmodes_seed = kmodes_seed;
      emit_kmodes(cfg, catalog);
    });
  });

  CommonOptions eval_opts;
  std::string eval_split;
  std::string eval_mode;
  std::int64_t eval_folds = 0;
  std::optional<std::uint64_t> eval_seed;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Cross-validated rating prediction (baseline vs stereotype)");
  add_common_options(eval_cmd, eval_opts);
  eval_cmd->add_option("--split", eval_split, "new-user or new-item");
  eval_cmd->add_option("--mode", eval_mode, "baseline or stereotype");
  eval_cmd->add_option("--folds", eval_folds, "Cross-validation folds");
  eval_cmd->add_option("--eval-seed", eval_seed, "Seed for the evaluation stage");
  eval_cmd->callback([&] {
    status = run_stage("evaluate", eval_opts, [&](const PipelineConfig& base,
                                                  const ItemCatalog& catalog) {
      PipelineConfig cfg = base;
      if (eval_folds > 0) cfg.eval_folds = static_cast<std::size_t>(eval_folds);
      if (eval_seed) cfg.eval_seed = eval_seed;
      const std::vector<SplitKind> splits =
          eval_split.empty() ? cfg.eval_splits
                             : std::vector<SplitKind>{split_from_string(eval_split)};
      const std::vector<FeatureMode> modes =
          eval_mode.empty() ? cfg.eval_modes
                            : std::vector<FeatureMode>{mode_from_string(eval_mode)};
      const auto reports = run_evaluations(cfg, catalog, splits, modes);
      for (const auto& report : reports) {
        std::printf("%s %s: rmse=%s mae=%s wall=%ss\n", to_string(report.kind).c_str(),
                    to_string(report.mode).c_str(), format_double(report.rmse).c_str(),
                    format_double(report.mae).c_str(),
                    format_double(report.wall_seconds).c_str());
      }
    });
  });

  CommonOptions pipeline_opts;
  auto* pipeline_cmd =
      app.add_subcommand("pipeline", "Run ingest, corr, cluster, stereotypes and evaluate");
  add_common_options(pipeline_cmd, pipeline_opts);
  pipeline_cmd->callback(
      [&] { status = run_stage("pipeline", pipeline_opts, emit_pipeline); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return status;
}

}  // namespace stereogen
