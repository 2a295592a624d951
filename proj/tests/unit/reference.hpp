#pragma once

// Independent reference implementations the unit and acceptance tests compare
// the library against. Deliberately naive: every quantity is recomputed from
// the original inputs instead of being updated incrementally.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "stereogen/hac.hpp"
#include "stereogen/kmodes.hpp"
#include "stereogen/matrix.hpp"

namespace reference {

// From-scratch cluster distance over the original dissimilarities. Ward uses
// the closed form over pairwise sums, not the running recursion:
//   W(A,B) = (2 nA nB / (nA+nB)) * (Sab/(nA nB) - Saa/(2 nA^2) - Sbb/(2 nB^2))
// with Sxy the sum of d over ordered cross pairs.
inline double cluster_distance(const stereogen::SquareMatrix& d,
                               const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b, stereogen::Linkage linkage) {
  using stereogen::Linkage;
  if (linkage == Linkage::single || linkage == Linkage::complete) {
    double best = linkage == Linkage::single ? std::numeric_limits<double>::infinity()
                                             : -std::numeric_limits<double>::infinity();
    for (const std::size_t i : a)
      for (const std::size_t j : b)
        best = linkage == Linkage::single ? std::min(best, d.at(i, j))
                                          : std::max(best, d.at(i, j));
    return best;
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (const std::size_t i : a)
    for (const std::size_t j : b) sab += d.at(i, j);
  for (const std::size_t i : a)
    for (const std::size_t j : a) saa += d.at(i, j);
  for (const std::size_t i : b)
    for (const std::size_t j : b) sbb += d.at(i, j);
  const double centroid_gap =
      sab / (na * nb) - saa / (2.0 * na * na) - sbb / (2.0 * nb * nb);
  return (2.0 * na * nb / (na + nb)) * centroid_gap;
}

// O(N^3)-per-step agglomerator sharing only the tie-break contract with the
// library: lowest distance first, then smallest (min id, max id) pair.
inline stereogen::Dendrogram agglomerate(const stereogen::DissimilarityMatrix& d,
                                         stereogen::Linkage linkage) {
  const std::size_t n = d.values.size();
  struct Cluster {
    std::size_t node;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i, {i}});

  stereogen::Dendrogram dendro;
  dendro.leaves = d.labels;
  for (std::size_t t = 0; t < n - 1; ++t) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double value =
            cluster_distance(d.values, clusters[i].members, clusters[j].members, linkage);
        const std::size_t lo = std::min(clusters[i].node, clusters[j].node);
        const std::size_t hi = std::max(clusters[i].node, clusters[j].node);
        const std::size_t cur_lo = std::min(clusters[bi].node, clusters[bj].node);
        const std::size_t cur_hi = std::max(clusters[bi].node, clusters[bj].node);
        if (value < best ||
            (value == best && (lo < cur_lo || (lo == cur_lo && hi < cur_hi)))) {
          best = value;
          bi = i;
          bj = j;
        }
      }
    }
    Cluster merged;
    merged.node = n + t;
    merged.members = clusters[bi].members;
    merged.members.insert(merged.members.end(), clusters[bj].members.begin(),
                          clusters[bj].members.end());
    std::sort(merged.members.begin(), merged.members.end());
    dendro.merges.push_back({std::min(clusters[bi].node, clusters[bj].node),
                             std::max(clusters[bi].node, clusters[bj].node), best,
                             merged.members.size()});
    if (bi > bj) std::swap(bi, bj);
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bi));
    clusters.push_back(std::move(merged));
  }
  return dendro;
}

// Exhaustive maximum of the seriation objective; feasible for N <= 8.
inline double best_seriation_objective(const stereogen::SquareMatrix& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    best = std::max(best, stereogen::seriation_objective(values, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Optimal cost of clustering the rows into the given groups: per attribute,
// the minority count is unavoidable whatever the mode.
inline std::size_t partition_cost(const std::vector<stereogen::CategoricalRow>& rows,
                                  const std::vector<std::vector<std::size_t>>& groups) {
  std::size_t cost = 0;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    const std::size_t width = rows.front().size();
    for (std::size_t j = 0; j < width; ++j) {
      std::size_t ones = 0;
      for (const std::size_t r : group) ones += rows[r][j] ? 1 : 0;
      cost += std::min(ones, group.size() - ones);
    }
  }
  return cost;
}

// Brute force over all proper bipartitions; feasible for <= 20 rows.
inline std::size_t best_two_partition_cost(const std::vector<stereogen::CategoricalRow>& rows) {
  const std::size_t m = rows.size();
  const std::uint32_t limit = (1u << m) - 1u;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::vector<std::size_t> a, b;
    for (std::size_t r = 0; r < m; ++r) ((mask >> r) & 1u ? a : b).push_back(r);
    if (a.empty() || b.empty()) continue;
    best = std::min(best, partition_cost(rows, {a, b}));
  }
  return best;
}

}  // namespace reference
