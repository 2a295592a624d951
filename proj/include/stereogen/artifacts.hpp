#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stereogen/corr.hpp"
#include "stereogen/hac.hpp"
#include "stereogen/ingest.hpp"
#include "stereogen/kmodes.hpp"
#include "stereogen/recs.hpp"
#include "stereogen/stereotype.hpp"

namespace stereogen {

/// Serializers for every on-disk artifact. All output is deterministic for a
/// given input; floating-point fields use shortest round-trip formatting.

std::string vocab_csv(const LabelVocabulary& vocab);

/// Symmetric matrix with labels as header row and first column.
std::string labeled_matrix_csv(const std::vector<std::string>& labels, const SquareMatrix& values);

std::string merge_table_csv(const Dendrogram& dendro);

std::string dendrogram_dot(const Dendrogram& dendro, const std::string& name);

std::string ratio_csv(const IterationSeries& series);

struct StereotypeArtifact {
  StereotypeSet set;
  Metric metric = Metric::linear;
  Linkage linkage = Linkage::ward;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cut_iteration;  // absent when no structure was found
};

std::string stereotypes_json(const StereotypeArtifact& artifact);

/// Modes rendered as the label lists of their true attributes.
std::string kmodes_json(const KModesModel& model, const std::vector<std::string>& col_labels,
                        const std::string& feature_name);

std::string scan_csv(const std::vector<std::pair<std::size_t, double>>& scan);

std::string eval_json(const EvalReport& report, Metric metric, Linkage linkage);

/// One row per (split, mode) pair, shaped like a results table.
std::string eval_table_csv(const std::vector<EvalReport>& reports);

/// <stage>_<tags joined by _>.<ext> inside dir; tags order is the caller's.
std::string artifact_path(const std::string& dir, const std::string& stage,
                          const std::vector<std::string>& tags, const std::string& ext);

}  // namespace stereogen
