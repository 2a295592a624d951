#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "stereogen/errors.hpp"
#include "stereogen/recs.hpp"
#include "stereogen/rng.hpp"
#include "testutil.hpp"

using namespace stereogen;

namespace {

RatingsTable table_from(const std::vector<std::tuple<std::string, std::string, int>>& triples) {
  std::vector<RatingRecord> records;
  for (const auto& [u, i, r] : triples) records.push_back({u, i, r});
  return ratings_from_records(std::move(records));
}

/// Catalog of `items` items carrying one of two genre labels plus a year.
ItemCatalog toy_catalog(std::size_t items) {
  std::string csv = "item_id,genre,year\n";
  for (std::size_t i = 0; i < items; ++i) {
    csv += "i" + std::to_string(i) + "," + (i % 2 == 0 ? "Drama|Extra" : "Comedy") + "," +
           std::to_string(1990 + (i % 10)) + "\n";
  }
  return load_catalog(testutil::temp_file("toy_catalog_" + std::to_string(items) + ".csv", csv),
                      {"genre"});
}

RatingsTable toy_ratings(std::size_t users, std::size_t items, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<RatingRecord> records;
  for (std::size_t u = 0; u < users; ++u)
    for (std::size_t i = 0; i < items; ++i)
      records.push_back({"u" + std::to_string(u), "i" + std::to_string(i),
                         1 + static_cast<int>(rng.uniform_int(5))});
  return ratings_from_records(std::move(records));
}

}  // namespace

TEST_CASE("normalize: standard scores per user") {
  const RatingsTable t = table_from({{"u1", "a", 1}, {"u1", "b", 3}, {"u1", "c", 5}});
  const NormalizedRatings n = normalize(t);
  REQUIRE(n.records.size() == 3);
  CHECK(n.records[0].r_tilde == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(n.records[1].r_tilde == doctest::Approx(0.0));
  CHECK(n.records[2].r_tilde == doctest::Approx(1.2247).epsilon(1e-4));

  // Mean 0 and population std 1 for sigma > 0 users.
  double mean = 0.0;
  for (const auto& rec : n.records) mean += rec.r_tilde;
  mean /= 3.0;
  double var = 0.0;
  for (const auto& rec : n.records) var += (rec.r_tilde - mean) * (rec.r_tilde - mean);
  var /= 3.0;
  CHECK(std::abs(mean) < 1e-9);
  CHECK(std::abs(var - 1.0) < 1e-9);
}

TEST_CASE("normalize: zero-variance users map to zero") {
  const RatingsTable t = table_from({{"u1", "a", 4}, {"u1", "b", 4}, {"u2", "c", 3}});
  const NormalizedRatings n = normalize(t);
  CHECK(n.records[0].r_tilde == 0.0);
  CHECK(n.records[1].r_tilde == 0.0);
  CHECK(n.records[2].r_tilde == 0.0);  // single-rating user
}

TEST_CASE("denormalize: cap, floor and interior") {
  const UserStats stats{3.0, 1.5};
  CHECK(denormalize_and_clamp(1.8, stats) == doctest::Approx(5.0));   // 5.7 capped
  CHECK(denormalize_and_clamp(-1.9, stats) == doctest::Approx(1.0));  // 0.15 floored
  CHECK(denormalize_and_clamp(0.2666666666666667, stats) == doctest::Approx(3.4));
}

TEST_CASE("normalize/denormalize: exact round trip for sigma > 0 users") {
  const RatingsTable t = toy_ratings(12, 9, 5);
  const NormalizedRatings n = normalize(t);
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& stats = t.user_stats.at(t.records[i].user_id);
    if (stats.sigma == 0.0) continue;
    const double back = stats.mu + stats.sigma * n.records[i].r_tilde;
    CHECK(back == doctest::Approx(t.records[i].rating).epsilon(1e-9));
  }
}

TEST_CASE("splits: held-out users never leak into training") {
  const RatingsTable t = toy_ratings(18, 6, 42);
  for (std::size_t fold = 0; fold < 6; ++fold) {
    const ExperimentSplit split = make_split(t, SplitKind::new_user, 1.0 / 6.0, 7, fold);
    std::set<std::string> train_users, test_users;
    for (const auto& rec : split.train) train_users.insert(rec.user_id);
    for (const auto& rec : split.test) test_users.insert(rec.user_id);
    for (const auto& user : test_users) CHECK(train_users.count(user) == 0);
    CHECK_FALSE(split.train.empty());
    CHECK_FALSE(split.test.empty());
  }
}

TEST_CASE("splits: folds partition the key space disjointly") {
  const RatingsTable t = toy_ratings(18, 6, 43);
  std::set<std::string> all_test_users;
  for (std::size_t fold = 0; fold < 6; ++fold) {
    const ExperimentSplit split = make_split(t, SplitKind::new_user, 1.0 / 6.0, 7, fold);
    for (const auto& rec : split.test) {
      // Insertion must succeed for a user not seen in another fold's test set.
      all_test_users.insert(rec.user_id);
    }
  }
  CHECK(all_test_users.size() == 18);

  std::size_t covered = 0;
  for (std::size_t fold = 0; fold < 6; ++fold) {
    const ExperimentSplit split = make_split(t, SplitKind::new_item, 1.0 / 6.0, 7, fold);
    std::set<std::string> test_items;
    for (const auto& rec : split.test) test_items.insert(rec.item_id);
    covered += test_items.size();
    for (const auto& rec : split.train) CHECK(test_items.count(rec.item_id) == 0);
  }
  CHECK(covered == 6);

  CHECK_THROWS_AS(make_split(t, SplitKind::new_user, 0.0, 7, 0), ConfigError);
  CHECK_THROWS_AS(make_split(t, SplitKind::new_user, 1.0 / 6.0, 7, 99), Error);
}

TEST_CASE("assemble: widths, missing items, zero label blocks") {
  const ItemCatalog catalog = toy_catalog(8);
  const LabelVocabulary vocab = build_vocabulary(catalog, "genre", 1);
  REQUIRE(vocab.labels.size() == 3);  // Comedy, Drama, Extra

  StereotypeSet set;
  set.feature_name = "genre";
  set.groups = {{"Drama", "Extra"}, {"Comedy"}};

  RatingsTable ratings = table_from({{"u1", "i0", 4},
                                     {"u1", "i1", 2},
                                     {"u2", "i2", 5},
                                     {"u2", "missing", 3}});
  const NormalizedRatings norm = normalize(ratings);

  const DesignMatrix baseline =
      assemble_features(catalog, ratings.records, norm, FeatureMode::baseline, {vocab}, {set});
  // bias + year + 3 labels
  CHECK(baseline.cols == 5);
  CHECK(baseline.complex_width == 3);
  CHECK(baseline.rows == 3);
  CHECK(baseline.skipped_missing_items == 1);

  const DesignMatrix stereo =
      assemble_features(catalog, ratings.records, norm, FeatureMode::stereotype, {vocab}, {set});
  CHECK(stereo.cols == 4);
  CHECK(stereo.complex_width == 2);
  CHECK(stereo.complex_width < baseline.complex_width);

  // Row for i0 (Drama|Extra): bias, year, then activations.
  CHECK(stereo.values[0] == 1.0);
  CHECK(stereo.values[1] == 1990.0);
  CHECK(stereo.values[2] == 1.0);
  CHECK(stereo.values[3] == 0.0);
}

TEST_CASE("train_linear: recovers an exact linear relationship") {
  DesignMatrix design;
  design.rows = 6;
  design.cols = 2;
  // y = 2 + 3x
  for (int i = 0; i < 6; ++i) {
    design.values.push_back(1.0);
    design.values.push_back(static_cast<double>(i));
    design.targets.push_back(2.0 + 3.0 * i);
    design.users.push_back("u");
    design.raw_ratings.push_back(3);
  }
  const std::vector<double> beta = train_linear(design);
  REQUIRE(beta.size() == 2);
  CHECK(beta[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(beta[1] == doctest::Approx(3.0).epsilon(1e-6));

  const std::vector<double> fitted = predict(design, beta);
  CHECK(fitted[5] == doctest::Approx(17.0).epsilon(1e-6));

  design.values[3] = std::nan("");
  CHECK_THROWS_AS(train_linear(design), Error);
}

TEST_CASE("evaluate: hand-computed metrics and rmse >= mae") {
  // Constant prediction 3 against targets 1 and 5: rmse = mae = 2.
  // Users rate constantly so sigma = 0 and predictions denormalize to mu = 3.
  RatingsTable train = table_from({{"u1", "i0", 3}, {"u1", "i1", 3}, {"u2", "i0", 3}});
  RatingsTable all = table_from({{"u1", "i0", 3}, {"u1", "i1", 3}, {"u2", "i0", 3},
                                 {"u1", "i2", 1}, {"u2", "i3", 5}});
  ExperimentSplit split;
  split.kind = SplitKind::new_item;
  split.train = train.records;
  split.test = {{"u1", "i2", 1}, {"u2", "i3", 5}};

  const ItemCatalog catalog = toy_catalog(6);
  const LabelVocabulary vocab = build_vocabulary(catalog, "genre", 1);
  StereotypeSet set;
  set.feature_name = "genre";
  set.groups = {{"Drama", "Extra"}, {"Comedy"}};

  const FoldMetrics metrics =
      evaluate_fold(catalog, split, FeatureMode::baseline, {vocab}, {set});
  CHECK(metrics.rmse == doctest::Approx(2.0));
  CHECK(metrics.mae == doctest::Approx(2.0));
  CHECK(metrics.rmse >= metrics.mae);
  CHECK(metrics.wall_seconds >= 0.0);
}

TEST_CASE("cross_validate: aggregates folds, predictions stay in range") {
  const ItemCatalog catalog = toy_catalog(12);
  const RatingsTable ratings = toy_ratings(18, 12, 4);
  const LabelVocabulary vocab = build_vocabulary(catalog, "genre", 1);
  StereotypeSet set;
  set.feature_name = "genre";
  set.groups = {{"Drama", "Extra"}, {"Comedy"}};

  for (const SplitKind kind : {SplitKind::new_user, SplitKind::new_item}) {
    for (const FeatureMode mode : {FeatureMode::baseline, FeatureMode::stereotype}) {
      const EvalReport report =
          cross_validate(ratings, catalog, kind, mode, 6, 11, {vocab}, {set});
      CHECK(report.fold_metrics.size() == 6);
      CHECK(report.rmse >= report.mae);
      CHECK(report.rmse <= 4.0);  // ratings span 1..5, clamped predictions too
      double mean_rmse = 0.0;
      for (const auto& fold : report.fold_metrics) mean_rmse += fold.rmse;
      CHECK(report.rmse == doctest::Approx(mean_rmse / 6.0));
    }
  }
}
