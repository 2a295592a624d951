#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stereogen/corr.hpp"
#include "stereogen/matrix.hpp"

namespace stereogen {

enum class Metric { linear, quadratic };
enum class Linkage { single, complete, ward };

std::string to_string(Metric m);
std::string to_string(Linkage l);
Metric metric_from_string(const std::string& s);
Linkage linkage_from_string(const std::string& s);

struct DissimilarityMatrix {
  std::vector<std::string> labels;
  SquareMatrix values;
  Metric metric_kind = Metric::linear;
};

/// linear: 1 - |R|; quadratic: sqrt(1 - R^2). Diagonal forced to exactly 0.
DissimilarityMatrix to_dissimilarity(const CorrelationMatrix& r, Metric kind);

/// One agglomeration step. Node ids: leaves 0..N-1, merge t creates node N+t.
/// left < right always.
struct MergeEvent {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<MergeEvent> merges;

  std::size_t leaf_count() const { return leaves.size(); }
};

/// Agglomerates with Lance-Williams updates. Equal-distance ties resolve to
/// the lexicographically smallest (min id, max id) pair, so runs are
/// deterministic.
Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage);

/// True when some merge height is strictly below an earlier one.
bool has_inversion(const Dendrogram& dendro);

/// Leaf-id groups of the maximal subtrees whose internal merge heights are all
/// <= height. Groups ordered by smallest member; members ascending.
std::vector<std::vector<std::size_t>> cut_at(const Dendrogram& dendro, double height);

}  // namespace stereogen
