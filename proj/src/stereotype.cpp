#include "stereogen/stereotype.hpp"

#include <algorithm>

#include "stereogen/errors.hpp"
#include "stereogen/ingest.hpp"

namespace stereogen {

IterationSeries iteration_series(const Dendrogram& dendro) {
  const std::size_t n = dendro.leaf_count();
  IterationSeries series;
  series.points.reserve(dendro.merges.size());
  std::size_t count = 0;
  std::size_t members = 0;
  for (const auto& m : dendro.merges) {
    const bool left_leaf = m.left < n;
    const bool right_leaf = m.right < n;
    if (left_leaf && right_leaf) {
      ++count;
      members += 2;
    } else if (left_leaf || right_leaf) {
      ++members;
    } else {
      --count;
    }
    IterationPoint p;
    p.clusters_count = count;
    p.avg_cluster_size = static_cast<double>(members) / static_cast<double>(count);
    p.ratio = p.avg_cluster_size / static_cast<double>(count);
    series.points.push_back(p);
  }
  return series;
}

std::optional<std::size_t> find_cut(const IterationSeries& series) {
  const auto& r = series.points;
  const std::size_t T = r.size();

  // Monotonically non-decreasing ratios mean no structure; this overrides the
  // boundary allowance below, otherwise every chain dendrogram would cut at 1.
  bool non_decreasing = true;
  for (std::size_t t = 0; t + 1 < T; ++t)
    if (r[t + 1].ratio < r[t].ratio) non_decreasing = false;
  if (non_decreasing) return std::nullopt;

  std::optional<std::size_t> cut;
  std::size_t a = 0;
  while (a < T) {
    std::size_t b = a;
    while (b + 1 < T && r[b + 1].ratio == r[a].ratio) ++b;
    // Segment [a..b] of equal ratios (0-based); iterations are a+1..b+1.
    const bool rises_after = b + 1 < T && r[b + 1].ratio > r[b].ratio;
    const bool drops_into = a > 0 && r[a - 1].ratio > r[a].ratio;
    const bool boundary_single = a == 0 && b == 0;
    if (rises_after && (drops_into || boundary_single)) cut = b + 1;
    a = b + 1;
  }
  return cut;
}

StereotypeSet extract_stereotypes(const Dendrogram& dendro, std::size_t c,
                                  const std::string& feature_name) {
  const std::size_t n = dendro.leaf_count();
  if (c < 1 || c + 1 > dendro.merges.size())
    throw Error("cut iteration " + std::to_string(c) + " out of range [1, " +
                std::to_string(n >= 2 ? n - 2 : 0) + "]");
  const double height = (dendro.merges[c - 1].height + dendro.merges[c].height) / 2.0;
  StereotypeSet set;
  set.feature_name = feature_name;
  set.cut_height = height;
  for (const auto& group : cut_at(dendro, height)) {
    std::vector<std::string> labels;
    labels.reserve(group.size());
    for (const std::size_t leaf : group) labels.push_back(dendro.leaves[leaf]);
    set.groups.push_back(std::move(labels));
  }
  return set;
}

StereotypeSet singleton_stereotypes(const std::vector<std::string>& labels,
                                    const std::string& feature_name) {
  StereotypeSet set;
  set.feature_name = feature_name;
  set.cut_height = std::nullopt;
  set.groups.reserve(labels.size());
  for (const auto& label : labels) set.groups.push_back({label});
  return set;
}

ProjectionKind projection_from_string(const std::string& s) {
  if (s == "binary") return ProjectionKind::binary;
  if (s == "count") return ProjectionKind::count;
  if (s == "fraction") return ProjectionKind::fraction;
  throw ConfigError("unknown projection '" + s + "' (expected binary, count or fraction)");
}

std::string to_string(ProjectionKind p) {
  switch (p) {
    case ProjectionKind::binary: return "binary";
    case ProjectionKind::count: return "count";
    default: return "fraction";
  }
}

std::vector<double> project_item(const std::vector<std::string>& item_labels,
                                 const StereotypeSet& s, ProjectionKind kind) {
  std::vector<std::string> keys;
  keys.reserve(item_labels.size());
  for (const auto& label : item_labels) keys.push_back(fold_label(label));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<double> out(s.groups.size(), 0.0);
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    std::size_t hits = 0;
    for (const auto& label : s.groups[g])
      if (std::binary_search(keys.begin(), keys.end(), fold_label(label))) ++hits;
    switch (kind) {
      case ProjectionKind::binary:
        out[g] = hits > 0 ? 1.0 : 0.0;
        break;
      case ProjectionKind::count:
        out[g] = static_cast<double>(hits);
        break;
      case ProjectionKind::fraction:
        out[g] = s.groups[g].empty() ? 0.0
                                     : static_cast<double>(hits) /
                                           static_cast<double>(s.groups[g].size());
        break;
    }
  }
  return out;
}

}  // namespace stereogen
