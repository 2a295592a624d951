#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stereogen/ingest.hpp"
#include "stereogen/stereotype.hpp"

namespace stereogen {

struct NormalizedRecord {
  std::string user_id;
  std::string item_id;
  double r_tilde = 0.0;
};

struct NormalizedRatings {
  std::vector<NormalizedRecord> records;
  std::map<std::string, UserStats> user_stats;
  UserStats global;

  /// Per-user stats, or the global fallback for users absent from training.
  const UserStats& stats_for(const std::string& user_id) const;
};

/// Standard scores (r - mu_u)/sigma_u; sigma_u = 0 maps to 0.
NormalizedRatings normalize(const RatingsTable& r);

/// mu_u + sigma_u * r_tilde clamped into [1,5].
double denormalize_and_clamp(double r_tilde, const UserStats& stats);

enum class SplitKind { new_user, new_item };

std::string to_string(SplitKind k);
SplitKind split_from_string(const std::string& s);

struct ExperimentSplit {
  SplitKind kind = SplitKind::new_user;
  std::vector<RatingRecord> train;
  std::vector<RatingRecord> test;
  std::size_t fold_id = 0;
  std::uint64_t seed = 0;
};

/// Holds out one seeded, fold-indexed chunk of users (new_user) or items
/// (new_item). The shuffle depends only on the seed, so folds are disjoint.
ExperimentSplit make_split(const RatingsTable& data, SplitKind kind, double held_out_fraction,
                           std::uint64_t seed, std::size_t fold);

enum class FeatureMode { baseline, stereotype };

std::string to_string(FeatureMode m);
FeatureMode mode_from_string(const std::string& s);

struct DesignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> targets;
  std::vector<std::string> users;
  std::vector<int> raw_ratings;
  std::size_t complex_width = 0;
  std::size_t skipped_missing_items = 0;
};

/// One row per rating record: bias 1, then the catalog's simple features,
/// then per complex feature either the raw multi-hot block (baseline) or the
/// stereotype activations (stereotype mode). Targets are standard scores under
/// the supplied (train-time) stats.
DesignMatrix assemble_features(const ItemCatalog& catalog,
                               const std::vector<RatingRecord>& records,
                               const NormalizedRatings& train_norm, FeatureMode mode,
                               const std::vector<LabelVocabulary>& vocabs,
                               const std::vector<StereotypeSet>& stereotypes,
                               ProjectionKind projection = ProjectionKind::binary);

/// Ridge least squares, lambda = 1e-6; handles underdetermined systems.
std::vector<double> train_linear(const DesignMatrix& design);

std::vector<double> predict(const DesignMatrix& design, const std::vector<double>& coefficients);

struct FoldMetrics {
  double rmse = 0.0;
  double mae = 0.0;
  double wall_seconds = 0.0;
};

/// Fits on the split's train rows and scores the test rows; predictions are
/// denormalized and clamped before RMSE/MAE against the raw 1..5 ratings.
/// wall_seconds covers train_linear and predict only.
FoldMetrics evaluate_fold(const ItemCatalog& catalog, const ExperimentSplit& split,
                          FeatureMode mode, const std::vector<LabelVocabulary>& vocabs,
                          const std::vector<StereotypeSet>& stereotypes,
                          ProjectionKind projection = ProjectionKind::binary);

struct EvalReport {
  FeatureMode mode = FeatureMode::baseline;
  SplitKind kind = SplitKind::new_user;
  std::uint64_t seed = 0;
  std::size_t folds = 0;
  std::vector<FoldMetrics> fold_metrics;
  double rmse = 0.0;
  double mae = 0.0;
  double wall_seconds = 0.0;
  std::size_t complex_width = 0;
};

EvalReport cross_validate(const RatingsTable& data, const ItemCatalog& catalog, SplitKind kind,
                          FeatureMode mode, std::size_t folds, std::uint64_t seed,
                          const std::vector<LabelVocabulary>& vocabs,
                          const std::vector<StereotypeSet>& stereotypes,
                          ProjectionKind projection = ProjectionKind::binary);

}  // namespace stereogen
