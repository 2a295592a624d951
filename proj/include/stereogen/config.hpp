#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stereogen/hac.hpp"
#include "stereogen/kmodes.hpp"
#include "stereogen/recs.hpp"
#include "stereogen/stereotype.hpp"

namespace stereogen {

struct FeatureConfig {
  std::string name;
  std::int64_t min_count = 1;
  char delimiter = '|';
};

struct PipelineConfig {
  std::string ratings_path;
  std::string catalog_path;
  std::string output_dir = "out";
  std::vector<FeatureConfig> features;
  Metric metric = Metric::linear;
  Linkage linkage = Linkage::ward;
  ProjectionKind projection = ProjectionKind::binary;
  std::uint64_t seed = 42;
  std::vector<std::size_t> kmodes_k = {2, 3, 4, 5};
  InitKind kmodes_init = InitKind::cao;
  std::optional<std::uint64_t> kmodes_seed;
  std::vector<SplitKind> eval_splits = {SplitKind::new_user};
  std::size_t eval_folds = 6;
  std::optional<std::uint64_t> eval_seed;
  std::vector<FeatureMode> eval_modes = {FeatureMode::baseline, FeatureMode::stereotype};

  /// Section seeds default to stage expansions of the root seed.
  std::uint64_t resolved_kmodes_seed() const;
  std::uint64_t resolved_eval_seed() const;
};

/// Minimal TOML-style document: [section] headers, key = value lines, values
/// being strings, integers, floats, booleans, or flat arrays of those.
struct ConfigDocument {
  std::map<std::string, std::map<std::string, std::vector<std::string>>> sections;

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  std::vector<std::string> get_array(const std::string& section, const std::string& key) const;
};

ConfigDocument parse_config_text(const std::string& text, const std::string& origin);

PipelineConfig load_config(const std::string& path);
PipelineConfig config_from_text(const std::string& text, const std::string& origin);

}  // namespace stereogen
