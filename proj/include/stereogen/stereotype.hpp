#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stereogen/hac.hpp"

namespace stereogen {

/// Per merge iteration t = 1..N-1. Only clusters of size >= 2 are counted;
/// unmerged leaves are not clusters.
struct IterationPoint {
  std::size_t clusters_count = 0;
  double avg_cluster_size = 0.0;
  double ratio = 0.0;
};

struct IterationSeries {
  std::vector<IterationPoint> points;
};

IterationSeries iteration_series(const Dendrogram& dendro);

/// Highest iteration with a local minimum of the ratio: largest t with
/// ratio(t-1) > ratio(t) and ratio(t) < ratio(t+1). Boundary t=1 qualifies
/// when ratio(1) < ratio(2); a plateau with a strict drop in and strict rise
/// out counts once, at its rightmost index. nullopt means no structure.
std::optional<std::size_t> find_cut(const IterationSeries& series);

struct StereotypeSet {
  std::string feature_name;
  std::vector<std::vector<std::string>> groups;
  std::optional<double> cut_height;
};

/// Cuts midway between the merge heights of iterations c and c+1 (1-based c,
/// 1 <= c <= N-2) and returns the label partition.
StereotypeSet extract_stereotypes(const Dendrogram& dendro, std::size_t c,
                                  const std::string& feature_name = {});

/// Fallback when no cut exists: every label its own stereotype.
StereotypeSet singleton_stereotypes(const std::vector<std::string>& labels,
                                    const std::string& feature_name = {});

enum class ProjectionKind { binary, count, fraction };

ProjectionKind projection_from_string(const std::string& s);
std::string to_string(ProjectionKind p);

/// Activation vector over the stereotype groups. Binary by default; count and
/// fraction weightings are config-selectable.
std::vector<double> project_item(const std::vector<std::string>& item_labels,
                                 const StereotypeSet& s,
                                 ProjectionKind kind = ProjectionKind::binary);

}  // namespace stereogen
