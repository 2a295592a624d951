#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace stereogen {

struct RatingRecord {
  std::string user_id;
  std::string item_id;
  int rating = 0;
};

struct UserStats {
  double mu = 0.0;
  double sigma = 0.0;
};

struct RatingsTable {
  std::vector<RatingRecord> records;
  std::map<std::string, UserStats> user_stats;
};

/// Loads a ratings CSV with header user_id,item_id,rating. Record order is
/// preserved; per-user mean and population standard deviation are computed.
RatingsTable load_ratings(const std::string& path);

/// Builds a table (including user_stats) from in-memory records.
RatingsTable ratings_from_records(std::vector<RatingRecord> records);

/// Canonical CSV form; loading then serializing round-trips byte-identically.
std::string serialize_ratings(const RatingsTable& table);

struct CatalogItem {
  std::string item_id;
  std::map<std::string, std::vector<std::string>> complex_labels;
  std::map<std::string, std::string> simple_values;
};

struct ItemCatalog {
  std::vector<CatalogItem> items;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> complex_features;
  std::vector<std::string> simple_features;

  const CatalogItem* find(const std::string& item_id) const;
};

/// Loads a CSV or JSON catalog. Columns named in complex_features are split on
/// the delimiter, trimmed, and deduplicated (case-insensitive, first casing
/// kept); every other column is passed through as a simple value.
ItemCatalog load_catalog(const std::string& path,
                         const std::vector<std::string>& complex_features,
                         char delimiter = '|');

struct LabelVocabulary {
  std::string feature_name;
  std::vector<std::string> labels;
  std::vector<std::int64_t> counts;
};

/// Retains labels occurring in at least min_count items, ordered by
/// (count descending, label ascending).
LabelVocabulary build_vocabulary(const ItemCatalog& catalog, const std::string& feature,
                                 std::int64_t min_count);

struct MultiHotMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_labels;
  std::vector<std::uint8_t> cells;

  std::size_t rows() const { return row_ids.size(); }
  std::size_t cols() const { return col_labels.size(); }
  std::uint8_t at(std::size_t i, std::size_t j) const { return cells[i * cols() + j]; }
  std::uint8_t& at(std::size_t i, std::size_t j) { return cells[i * cols() + j]; }
};

MultiHotMatrix encode_multi_hot(const ItemCatalog& catalog, const LabelVocabulary& vocab);

/// ASCII-lowercases a trimmed copy; the comparison key for label identity.
std::string fold_label(const std::string& label);

std::string trim(const std::string& s);

}  // namespace stereogen
