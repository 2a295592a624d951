#include "stereogen/recs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <set>

#include "stereogen/errors.hpp"
#include "stereogen/rng.hpp"

namespace stereogen {

const UserStats& NormalizedRatings::stats_for(const std::string& user_id) const {
  const auto it = user_stats.find(user_id);
  return it == user_stats.end() ? global : it->second;
}

NormalizedRatings normalize(const RatingsTable& r) {
  NormalizedRatings out;
  out.user_stats = r.user_stats;
  std::int64_t sum = 0, sumsq = 0;
  for (const auto& rec : r.records) {
    sum += rec.rating;
    sumsq += static_cast<std::int64_t>(rec.rating) * rec.rating;
  }
  if (!r.records.empty()) {
    const double m = static_cast<double>(r.records.size());
    out.global.mu = static_cast<double>(sum) / m;
    out.global.sigma =
        std::sqrt(std::max(0.0, static_cast<double>(sumsq) / m - out.global.mu * out.global.mu));
  }
  out.records.reserve(r.records.size());
  for (const auto& rec : r.records) {
    const auto it = r.user_stats.find(rec.user_id);
    if (it == r.user_stats.end()) throw Error("user_stats missing for user " + rec.user_id);
    const UserStats& stats = it->second;
    const double r_tilde =
        stats.sigma > 0.0 ? (static_cast<double>(rec.rating) - stats.mu) / stats.sigma : 0.0;
    out.records.push_back({rec.user_id, rec.item_id, r_tilde});
  }
  return out;
}

double denormalize_and_clamp(double r_tilde, const UserStats& stats) {
  return std::clamp(stats.mu + stats.sigma * r_tilde, 1.0, 5.0);
}

std::string to_string(SplitKind k) { return k == SplitKind::new_user ? "new-user" : "new-item"; }

SplitKind split_from_string(const std::string& s) {
  if (s == "new-user" || s == "new_user" || s == "A") return SplitKind::new_user;
  if (s == "new-item" || s == "new_item" || s == "B") return SplitKind::new_item;
  throw ConfigError("unknown split '" + s + "' (expected new-user or new-item)");
}

std::string to_string(FeatureMode m) {
  return m == FeatureMode::baseline ? "baseline" : "stereotype";
}

FeatureMode mode_from_string(const std::string& s) {
  if (s == "baseline") return FeatureMode::baseline;
  if (s == "stereotype") return FeatureMode::stereotype;
  throw ConfigError("unknown mode '" + s + "' (expected baseline or stereotype)");
}

ExperimentSplit make_split(const RatingsTable& data, SplitKind kind, double held_out_fraction,
                           std::uint64_t seed, std::size_t fold) {
  if (held_out_fraction <= 0.0 || held_out_fraction >= 1.0)
    throw ConfigError("held-out fraction must be inside (0, 1)");

  std::vector<std::string> keys;
  std::set<std::string> seen;
  for (const auto& rec : data.records) {
    const std::string& key = kind == SplitKind::new_user ? rec.user_id : rec.item_id;
    if (seen.insert(key).second) keys.push_back(key);
  }
  const std::string stage = kind == SplitKind::new_user ? "split-new-user" : "split-new-item";
  Rng rng(stage_seed(seed, stage));
  rng.shuffle(keys);

  const std::size_t chunk = std::max<std::size_t>(
      1, static_cast<std::size_t>(held_out_fraction * static_cast<double>(keys.size())));
  const std::size_t start = fold * chunk;
  if (start + chunk > keys.size())
    throw Error("fold " + std::to_string(fold) + " exceeds the " + std::to_string(keys.size()) +
                " available keys");
  const std::set<std::string> held(keys.begin() + static_cast<std::ptrdiff_t>(start),
                                   keys.begin() + static_cast<std::ptrdiff_t>(start + chunk));

  ExperimentSplit split;
  split.kind = kind;
  split.fold_id = fold;
  split.seed = seed;
  for (const auto& rec : data.records) {
    const std::string& key = kind == SplitKind::new_user ? rec.user_id : rec.item_id;
    (held.count(key) ? split.test : split.train).push_back(rec);
  }
  if (split.train.empty() || split.test.empty())
    throw Error("degenerate split: train or test is empty");
  return split;
}

namespace {

double parse_simple(const std::string& text, const std::string& feature) {
  const std::string t = trim(text);
  if (t.empty()) return 0.0;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ParseError("simple feature '" + feature + "' has non-numeric value '" + t + "'");
  return value;
}

}  // namespace

DesignMatrix assemble_features(const ItemCatalog& catalog,
                               const std::vector<RatingRecord>& records,
                               const NormalizedRatings& train_norm, FeatureMode mode,
                               const std::vector<LabelVocabulary>& vocabs,
                               const std::vector<StereotypeSet>& stereotypes,
                               ProjectionKind projection) {
  if (mode == FeatureMode::stereotype && stereotypes.size() != vocabs.size())
    throw ConfigError("stereotype mode needs one stereotype set per complex feature");

  std::size_t complex_width = 0;
  if (mode == FeatureMode::baseline) {
    for (const auto& v : vocabs) complex_width += v.labels.size();
  } else {
    for (const auto& s : stereotypes) complex_width += s.groups.size();
  }

  DesignMatrix design;
  design.complex_width = complex_width;
  design.cols = 1 + catalog.simple_features.size() + complex_width;

  // Per-vocabulary column lookup for the baseline blocks.
  std::vector<std::unordered_map<std::string, std::size_t>> col_of(vocabs.size());
  for (std::size_t f = 0; f < vocabs.size(); ++f)
    for (std::size_t j = 0; j < vocabs[f].labels.size(); ++j)
      col_of[f][fold_label(vocabs[f].labels[j])] = j;

  for (const auto& rec : records) {
    const CatalogItem* item = catalog.find(rec.item_id);
    if (item == nullptr) {
      ++design.skipped_missing_items;
      continue;
    }
    std::vector<double> row;
    row.reserve(design.cols);
    row.push_back(1.0);
    for (const auto& feature : catalog.simple_features) {
      const auto it = item->simple_values.find(feature);
      row.push_back(it == item->simple_values.end() ? 0.0 : parse_simple(it->second, feature));
    }
    for (std::size_t f = 0; f < vocabs.size(); ++f) {
      const auto labels_it = item->complex_labels.find(vocabs[f].feature_name);
      static const std::vector<std::string> kNoLabels;
      const auto& labels = labels_it == item->complex_labels.end() ? kNoLabels : labels_it->second;
      if (mode == FeatureMode::baseline) {
        std::vector<double> block(vocabs[f].labels.size(), 0.0);
        for (const auto& label : labels) {
          const auto col = col_of[f].find(fold_label(label));
          if (col != col_of[f].end()) block[col->second] = 1.0;
        }
        row.insert(row.end(), block.begin(), block.end());
      } else {
        const std::vector<double> block = project_item(labels, stereotypes[f], projection);
        row.insert(row.end(), block.begin(), block.end());
      }
    }

    const UserStats& stats = train_norm.stats_for(rec.user_id);
    const double r_tilde =
        stats.sigma > 0.0 ? (static_cast<double>(rec.rating) - stats.mu) / stats.sigma : 0.0;
    design.values.insert(design.values.end(), row.begin(), row.end());
    design.targets.push_back(r_tilde);
    design.users.push_back(rec.user_id);
    design.raw_ratings.push_back(rec.rating);
    ++design.rows;
  }
  return design;
}

std::vector<double> train_linear(const DesignMatrix& design) {
  for (const double v : design.values)
    if (!std::isfinite(v)) throw Error("non-finite value in design matrix");
  for (const double v : design.targets)
    if (!std::isfinite(v)) throw Error("non-finite target");

  const auto rows = static_cast<Eigen::Index>(design.rows);
  const auto cols = static_cast<Eigen::Index>(design.cols);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      X(design.values.data(), rows, cols);
  const Eigen::Map<const Eigen::VectorXd> y(design.targets.data(), rows);

  constexpr double kLambda = 1e-6;
  Eigen::MatrixXd gram = X.transpose() * X;
  gram.diagonal().array() += kLambda;
  const Eigen::VectorXd beta = gram.ldlt().solve(X.transpose() * y);
  return {beta.data(), beta.data() + beta.size()};
}

std::vector<double> predict(const DesignMatrix& design, const std::vector<double>& coefficients) {
  if (coefficients.size() != design.cols)
    throw Error("coefficient count does not match design width");
  std::vector<double> out(design.rows, 0.0);
  for (std::size_t r = 0; r < design.rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < design.cols; ++c)
      acc += design.values[r * design.cols + c] * coefficients[c];
    out[r] = acc;
  }
  return out;
}

FoldMetrics evaluate_fold(const ItemCatalog& catalog, const ExperimentSplit& split,
                          FeatureMode mode, const std::vector<LabelVocabulary>& vocabs,
                          const std::vector<StereotypeSet>& stereotypes,
                          ProjectionKind projection) {
  const NormalizedRatings train_norm = normalize(ratings_from_records(split.train));
  const DesignMatrix train = assemble_features(catalog, split.train, train_norm, mode, vocabs,
                                               stereotypes, projection);
  const DesignMatrix test = assemble_features(catalog, split.test, train_norm, mode, vocabs,
                                              stereotypes, projection);
  if (test.rows == 0) throw Error("empty test set after feature assembly");

  const auto started = std::chrono::steady_clock::now();
  const std::vector<double> beta = train_linear(train);
  const std::vector<double> raw_predictions = predict(test, beta);
  const auto finished = std::chrono::steady_clock::now();

  double se = 0.0, ae = 0.0;
  for (std::size_t r = 0; r < test.rows; ++r) {
    const double predicted =
        denormalize_and_clamp(raw_predictions[r], train_norm.stats_for(test.users[r]));
    const double err = predicted - static_cast<double>(test.raw_ratings[r]);
    se += err * err;
    ae += std::abs(err);
  }
  FoldMetrics metrics;
  metrics.rmse = std::sqrt(se / static_cast<double>(test.rows));
  metrics.mae = ae / static_cast<double>(test.rows);
  metrics.wall_seconds = std::chrono::duration<double>(finished - started).count();
  if (metrics.rmse + 1e-12 < metrics.mae)
    throw Error("rmse below mae: inconsistent evaluation");
  return metrics;
}

EvalReport cross_validate(const RatingsTable& data, const ItemCatalog& catalog, SplitKind kind,
                          FeatureMode mode, std::size_t folds, std::uint64_t seed,
                          const std::vector<LabelVocabulary>& vocabs,
                          const std::vector<StereotypeSet>& stereotypes,
                          ProjectionKind projection) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  EvalReport report;
  report.mode = mode;
  report.kind = kind;
  report.seed = seed;
  report.folds = folds;
  const double fraction = 1.0 / static_cast<double>(folds);
  for (std::size_t fold = 0; fold < folds; ++fold) {
    const ExperimentSplit split = make_split(data, kind, fraction, seed, fold);
    const FoldMetrics metrics =
        evaluate_fold(catalog, split, mode, vocabs, stereotypes, projection);
    report.fold_metrics.push_back(metrics);
    report.rmse += metrics.rmse;
    report.mae += metrics.mae;
    report.wall_seconds += metrics.wall_seconds;
  }
  const double f = static_cast<double>(folds);
  report.rmse /= f;
  report.mae /= f;
  report.wall_seconds /= f;

  std::size_t width = 0;
  if (mode == FeatureMode::baseline) {
    for (const auto& v : vocabs) width += v.labels.size();
  } else {
    for (const auto& s : stereotypes) width += s.groups.size();
  }
  report.complex_width = width;
  return report;
}

}  // namespace stereogen
