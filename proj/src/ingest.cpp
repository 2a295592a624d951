#include "stereogen/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "json.hpp"
#include "stereogen/csv.hpp"
#include "stereogen/errors.hpp"

namespace stereogen {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fold_label(const std::string& label) {
  std::string out = trim(label);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

namespace {

int parse_rating(const std::string& text, const std::string& path, std::size_t line) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ParseError(path + ":" + std::to_string(line) + ": malformed rating '" + text + "'");
  if (value < 1 || value > 5)
    throw ParseError(path + ":" + std::to_string(line) + ": rating " + std::to_string(value) +
                     " outside 1..5");
  return value;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (trim(header[i]) == name) return i;
  throw ParseError(path + ": missing required column '" + name + "'");
}

std::map<std::string, UserStats> compute_user_stats(const std::vector<RatingRecord>& records) {
  struct Acc {
    std::int64_t n = 0, sum = 0, sumsq = 0;
  };
  std::map<std::string, Acc> accs;
  for (const auto& rec : records) {
    auto& a = accs[rec.user_id];
    ++a.n;
    a.sum += rec.rating;
    a.sumsq += static_cast<std::int64_t>(rec.rating) * rec.rating;
  }
  std::map<std::string, UserStats> stats;
  for (const auto& [user, a] : accs) {
    const double mu = static_cast<double>(a.sum) / static_cast<double>(a.n);
    const double var = static_cast<double>(a.sumsq) / static_cast<double>(a.n) - mu * mu;
    stats[user] = {mu, std::sqrt(std::max(0.0, var))};
  }
  return stats;
}

std::vector<std::string> split_labels(const std::string& cell, char delimiter) {
  std::vector<std::string> labels;
  std::vector<std::string> seen_keys;
  std::string current;
  auto flush = [&] {
    const std::string label = trim(current);
    current.clear();
    if (label.empty()) return;
    const std::string key = fold_label(label);
    if (std::find(seen_keys.begin(), seen_keys.end(), key) != seen_keys.end()) return;
    seen_keys.push_back(key);
    labels.push_back(label);
  };
  for (char c : cell) {
    if (c == delimiter) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return labels;
}

ItemCatalog catalog_from_rows(const std::vector<std::string>& columns,
                              const std::vector<std::pair<std::string, std::vector<std::string>>>& rows,
                              const std::vector<std::string>& complex_features, char delimiter,
                              const std::string& path) {
  ItemCatalog catalog;
  catalog.complex_features = complex_features;
  for (const auto& feature : complex_features) {
    if (std::find(columns.begin(), columns.end(), feature) == columns.end())
      throw ConfigError(path + ": complex feature '" + feature + "' is not a column");
  }
  for (const auto& col : columns) {
    if (col == "item_id") continue;
    if (std::find(complex_features.begin(), complex_features.end(), col) == complex_features.end())
      catalog.simple_features.push_back(col);
  }
  for (const auto& [item_id, cells] : rows) {
    if (item_id.empty()) throw ParseError(path + ": item with empty item_id");
    if (catalog.index.count(item_id))
      throw ParseError(path + ": duplicate item_id '" + item_id + "'");
    CatalogItem item;
    item.item_id = item_id;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const std::string& name = columns[c];
      if (name == "item_id") continue;
      const std::string& cell = c < cells.size() ? cells[c] : std::string{};
      if (std::find(complex_features.begin(), complex_features.end(), name) !=
          complex_features.end()) {
        item.complex_labels[name] = split_labels(cell, delimiter);
      } else {
        item.simple_values[name] = cell;
      }
    }
    catalog.index[item.item_id] = catalog.items.size();
    catalog.items.push_back(std::move(item));
  }
  return catalog;
}

ItemCatalog load_catalog_json(const std::string& path,
                              const std::vector<std::string>& complex_features, char delimiter) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.is_array()) throw ParseError(path + ": expected a top-level JSON array of items");
  std::vector<std::string> columns{"item_id"};
  for (const auto& obj : doc) {
    if (!obj.is_object()) throw ParseError(path + ": catalog entries must be JSON objects");
    for (const auto& [key, value] : obj.items()) {
      (void)value;
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  for (const auto& obj : doc) {
    if (!obj.contains("item_id")) throw ParseError(path + ": catalog entry missing item_id");
    std::vector<std::string> cells(columns.size());
    std::string item_id;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (!obj.contains(columns[c])) continue;
      const auto& value = obj.at(columns[c]);
      std::string text;
      if (value.is_string()) {
        text = value.get<std::string>();
      } else if (value.is_array()) {
        for (const auto& entry : value) {
          if (!text.empty()) text += delimiter;
          text += entry.is_string() ? entry.get<std::string>() : entry.dump();
        }
      } else {
        text = value.dump();
      }
      if (columns[c] == "item_id") {
        item_id = text;
      } else {
        cells[c] = text;
      }
    }
    rows.emplace_back(item_id, std::move(cells));
  }
  return catalog_from_rows(columns, rows, complex_features, delimiter, path);
}

}  // namespace

RatingsTable ratings_from_records(std::vector<RatingRecord> records) {
  RatingsTable table;
  table.user_stats = compute_user_stats(records);
  table.records = std::move(records);
  return table;
}

RatingsTable load_ratings(const std::string& path) {
  const CsvTable csv = read_csv(path);
  const std::size_t user_col = find_column(csv.header, "user_id", path);
  const std::size_t item_col = find_column(csv.header, "item_id", path);
  const std::size_t rating_col = find_column(csv.header, "rating", path);
  std::vector<RatingRecord> records;
  records.reserve(csv.rows.size());
  for (const auto& row : csv.rows) {
    if (row.fields.size() != csv.header.size())
      throw ParseError(path + ":" + std::to_string(row.line) + ": expected " +
                       std::to_string(csv.header.size()) + " fields, got " +
                       std::to_string(row.fields.size()));
    RatingRecord rec;
    rec.user_id = trim(row.fields[user_col]);
    rec.item_id = trim(row.fields[item_col]);
    if (rec.user_id.empty() || rec.item_id.empty())
      throw ParseError(path + ":" + std::to_string(row.line) + ": empty user_id or item_id");
    rec.rating = parse_rating(row.fields[rating_col], path, row.line);
    records.push_back(std::move(rec));
  }
  return ratings_from_records(std::move(records));
}

std::string serialize_ratings(const RatingsTable& table) {
  std::string out = "user_id,item_id,rating\n";
  for (const auto& rec : table.records) {
    out += csv_join({rec.user_id, rec.item_id, std::to_string(rec.rating)});
    out += '\n';
  }
  return out;
}

const CatalogItem* ItemCatalog::find(const std::string& item_id) const {
  const auto it = index.find(item_id);
  return it == index.end() ? nullptr : &items[it->second];
}

ItemCatalog load_catalog(const std::string& path, const std::vector<std::string>& complex_features,
                         char delimiter) {
  const std::string text = read_file(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool looks_json = (path.size() > 5 && path.substr(path.size() - 5) == ".json") ||
                          (first != std::string::npos && (text[first] == '[' || text[first] == '{'));
  if (looks_json) return load_catalog_json(path, complex_features, delimiter);

  const CsvTable csv = parse_csv(text, path);
  std::vector<std::string> columns;
  columns.reserve(csv.header.size());
  for (const auto& h : csv.header) columns.push_back(trim(h));
  if (std::find(columns.begin(), columns.end(), "item_id") == columns.end())
    throw ParseError(path + ": missing required column 'item_id'");
  const std::size_t id_col =
      static_cast<std::size_t>(std::find(columns.begin(), columns.end(), "item_id") -
                               columns.begin());
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  rows.reserve(csv.rows.size());
  for (const auto& row : csv.rows) {
    if (row.fields.size() != columns.size())
      throw ParseError(path + ":" + std::to_string(row.line) + ": expected " +
                       std::to_string(columns.size()) + " fields, got " +
                       std::to_string(row.fields.size()));
    rows.emplace_back(trim(row.fields[id_col]), row.fields);
  }
  return catalog_from_rows(columns, rows, complex_features, delimiter, path);
}

LabelVocabulary build_vocabulary(const ItemCatalog& catalog, const std::string& feature,
                                 std::int64_t min_count) {
  if (std::find(catalog.complex_features.begin(), catalog.complex_features.end(), feature) ==
      catalog.complex_features.end())
    throw ConfigError("'" + feature + "' is not a declared complex feature");
  std::map<std::string, std::pair<std::string, std::int64_t>> counts;
  for (const auto& item : catalog.items) {
    const auto it = item.complex_labels.find(feature);
    if (it == item.complex_labels.end()) continue;
    for (const auto& label : it->second) {
      auto& entry = counts[fold_label(label)];
      if (entry.second == 0) entry.first = label;
      ++entry.second;
    }
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (const auto& [key, entry] : counts) {
    (void)key;
    if (entry.second >= min_count) kept.push_back(entry);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (kept.empty())
    throw NoLabelsError("feature '" + feature + "': no label reaches min_count " +
                        std::to_string(min_count));
  LabelVocabulary vocab;
  vocab.feature_name = feature;
  for (auto& [label, count] : kept) {
    vocab.labels.push_back(std::move(label));
    vocab.counts.push_back(count);
  }
  return vocab;
}

MultiHotMatrix encode_multi_hot(const ItemCatalog& catalog, const LabelVocabulary& vocab) {
  if (vocab.labels.empty()) throw NoLabelsError("empty vocabulary");
  std::unordered_map<std::string, std::size_t> col_of;
  for (std::size_t j = 0; j < vocab.labels.size(); ++j) col_of[fold_label(vocab.labels[j])] = j;
  MultiHotMatrix m;
  m.col_labels = vocab.labels;
  m.row_ids.reserve(catalog.items.size());
  for (const auto& item : catalog.items) m.row_ids.push_back(item.item_id);
  m.cells.assign(m.rows() * m.cols(), 0);
  for (std::size_t i = 0; i < catalog.items.size(); ++i) {
    const auto it = catalog.items[i].complex_labels.find(vocab.feature_name);
    if (it == catalog.items[i].complex_labels.end()) continue;
    for (const auto& label : it->second) {
      const auto col = col_of.find(fold_label(label));
      if (col != col_of.end()) m.at(i, col->second) = 1;
    }
  }
  return m;
}

}  // namespace stereogen
