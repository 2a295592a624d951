#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stereogen/ingest.hpp"

namespace stereogen {

using CategoricalRow = std::vector<std::uint8_t>;

enum class InitKind { huang, cao };

std::string to_string(InitKind k);
InitKind init_from_string(const std::string& s);

/// Count of positions where the vectors differ.
std::size_t matching_dissimilarity(const CategoricalRow& a, const CategoricalRow& b);

std::vector<CategoricalRow> rows_of(const MultiHotMatrix& m);

/// Distinct rows in first-occurrence order; the candidate pool both
/// initializations draw from.
std::vector<CategoricalRow> distinct_rows(const std::vector<CategoricalRow>& rows);

/// Seeded random modes: attribute values drawn with observed frequencies, then
/// snapped to the nearest not-yet-chosen distinct row (ties to the earliest).
std::vector<CategoricalRow> init_huang(const std::vector<CategoricalRow>& rows, std::size_t k,
                                       std::uint64_t seed);

/// Deterministic density/distance selection: first the densest row, then
/// repeatedly the row maximizing density times distance to the chosen set.
std::vector<CategoricalRow> init_cao(const std::vector<CategoricalRow>& rows, std::size_t k);

struct KModesModel {
  std::size_t k = 0;
  std::vector<CategoricalRow> modes;
  std::vector<std::size_t> assignments;
  double cost = 0.0;
  std::size_t iterations = 0;
  InitKind init_kind = InitKind::huang;
  std::uint64_t seed = 0;
  std::vector<double> cost_history;
};

/// Re-seeds every empty mode with the row farthest from it, then reassigns.
/// Returns true if any repair happened.
bool repair_empty_clusters(const std::vector<CategoricalRow>& rows,
                           std::vector<CategoricalRow>& modes,
                           std::vector<std::size_t>& assignments);

KModesModel fit(const std::vector<CategoricalRow>& rows, std::size_t k, InitKind init,
                std::uint64_t seed, std::size_t max_iter = 100);

std::vector<std::pair<std::size_t, double>> elbow_scan(const std::vector<CategoricalRow>& rows,
                                                       const std::vector<std::size_t>& k_values,
                                                       InitKind init, std::uint64_t seed);

}  // namespace stereogen
