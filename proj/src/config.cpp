#include "stereogen/config.hpp"

#include <charconv>
#include <string_view>

#include "stereogen/csv.hpp"
#include "stereogen/errors.hpp"
#include "stereogen/rng.hpp"

namespace stereogen {

std::uint64_t PipelineConfig::resolved_kmodes_seed() const {
  return kmodes_seed ? *kmodes_seed : stage_seed(seed, "kmodes");
}

std::uint64_t PipelineConfig::resolved_eval_seed() const {
  return eval_seed ? *eval_seed : stage_seed(seed, "evaluation");
}

namespace {

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& raw, const std::string& where) {
  const std::string t = trim(raw);
  if (t.size() >= 2 && t.front() == '"') {
    if (t.back() != '"') throw ParseError(where + ": unterminated string " + t);
    return t.substr(1, t.size() - 2);
  }
  return t;
}

std::vector<std::string> parse_value(const std::string& raw, const std::string& where) {
  const std::string t = trim(raw);
  if (t.empty()) throw ParseError(where + ": empty value");
  if (t.front() != '[') return {unquote(t, where)};
  if (t.back() != ']') throw ParseError(where + ": unterminated array");
  std::vector<std::string> items;
  std::string current;
  bool in_string = false;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const char c = t[i];
    if (c == '"') in_string = !in_string;
    if (c == ',' && !in_string) {
      if (!trim(current).empty()) items.push_back(unquote(current, where));
      current.clear();
    } else {
      current += c;
    }
  }
  if (in_string) throw ParseError(where + ": unterminated string in array");
  if (!trim(current).empty()) items.push_back(unquote(current, where));
  return items;
}

std::int64_t to_int(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(where + ": expected an integer, got '" + t + "'");
  return value;
}

}  // namespace

bool ConfigDocument::has(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

std::string ConfigDocument::get_string(const std::string& section, const std::string& key,
                                       const std::string& fallback) const {
  const auto s = sections.find(section);
  if (s == sections.end()) return fallback;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return fallback;
  if (k->second.size() != 1)
    throw ConfigError(section + "." + key + ": expected a scalar, got an array");
  return k->second.front();
}

std::int64_t ConfigDocument::get_int(const std::string& section, const std::string& key,
                                     std::int64_t fallback) const {
  if (!has(section, key)) return fallback;
  return to_int(get_string(section, key, ""), section + "." + key);
}

std::vector<std::string> ConfigDocument::get_array(const std::string& section,
                                                   const std::string& key) const {
  const auto s = sections.find(section);
  if (s == sections.end()) return {};
  const auto k = s->second.find(key);
  return k == s->second.end() ? std::vector<std::string>{} : k->second;
}

ConfigDocument parse_config_text(const std::string& text, const std::string& origin) {
  ConfigDocument doc;
  std::string section;
  std::size_t line_no = 0;
  std::string line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string where = origin + ":" + std::to_string(line_no);
    const std::string stripped = trim(strip_comment(line));
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']') throw ParseError(where + ": unterminated section header");
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (section.empty()) throw ParseError(where + ": empty section name");
      doc.sections[section];
      continue;
    }
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty()) throw ParseError(where + ": empty key");
    doc.sections[section][key] = parse_value(stripped.substr(eq + 1), where);
  }
  return doc;
}

PipelineConfig config_from_text(const std::string& text, const std::string& origin) {
  const ConfigDocument doc = parse_config_text(text, origin);
  PipelineConfig cfg;
  cfg.ratings_path = doc.get_string("paths", "ratings", "");
  cfg.catalog_path = doc.get_string("paths", "catalog", "");
  cfg.output_dir = doc.get_string("paths", "output_dir", cfg.output_dir);

  cfg.metric = metric_from_string(doc.get_string("clustering", "metric", to_string(cfg.metric)));
  cfg.linkage =
      linkage_from_string(doc.get_string("clustering", "linkage", to_string(cfg.linkage)));
  cfg.projection = projection_from_string(
      doc.get_string("clustering", "projection", to_string(cfg.projection)));

  cfg.seed = static_cast<std::uint64_t>(
      doc.get_int("pipeline", "seed", static_cast<std::int64_t>(cfg.seed)));

  if (doc.has("kmodes", "k")) {
    cfg.kmodes_k.clear();
    for (const auto& item : doc.get_array("kmodes", "k")) {
      const std::int64_t k = to_int(item, "kmodes.k");
      if (k < 1) throw ConfigError("kmodes.k entries must be >= 1");
      cfg.kmodes_k.push_back(static_cast<std::size_t>(k));
    }
    if (cfg.kmodes_k.empty()) throw ConfigError("kmodes.k must not be empty");
  }
  cfg.kmodes_init =
      init_from_string(doc.get_string("kmodes", "init", to_string(cfg.kmodes_init)));
  if (doc.has("kmodes", "seed"))
    cfg.kmodes_seed = static_cast<std::uint64_t>(doc.get_int("kmodes", "seed", 0));

  if (doc.has("evaluation", "split")) {
    cfg.eval_splits.clear();
    for (const auto& item : doc.get_array("evaluation", "split"))
      cfg.eval_splits.push_back(split_from_string(item));
  }
  const std::int64_t folds = doc.get_int("evaluation", "folds",
                                         static_cast<std::int64_t>(cfg.eval_folds));
  if (folds < 2) throw ConfigError("evaluation.folds must be >= 2");
  cfg.eval_folds = static_cast<std::size_t>(folds);
  if (doc.has("evaluation", "seed"))
    cfg.eval_seed = static_cast<std::uint64_t>(doc.get_int("evaluation", "seed", 0));
  if (doc.has("evaluation", "modes")) {
    cfg.eval_modes.clear();
    for (const auto& item : doc.get_array("evaluation", "modes"))
      cfg.eval_modes.push_back(mode_from_string(item));
    if (cfg.eval_modes.empty()) throw ConfigError("evaluation.modes must not be empty");
  }

  for (const auto& [name, keys] : doc.sections) {
    (void)keys;
    constexpr std::string_view prefix = "feature.";
    if (name.rfind(prefix, 0) != 0) continue;
    FeatureConfig feature;
    feature.name = name.substr(prefix.size());
    if (feature.name.empty()) throw ConfigError("feature section with empty name");
    feature.min_count = doc.get_int(name, "min_count", feature.min_count);
    if (feature.min_count < 1) throw ConfigError(name + ".min_count must be >= 1");
    const std::string delim = doc.get_string(name, "delimiter", std::string(1, feature.delimiter));
    if (delim.size() != 1) throw ConfigError(name + ".delimiter must be a single character");
    feature.delimiter = delim.front();
    cfg.features.push_back(std::move(feature));
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  return config_from_text(read_file(path), path);
}

}  // namespace stereogen
