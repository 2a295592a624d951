#include "stereogen/hac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stereogen/errors.hpp"

namespace stereogen {

std::string to_string(Metric m) { return m == Metric::linear ? "linear" : "quadratic"; }

std::string to_string(Linkage l) {
  switch (l) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    default: return "ward";
  }
}

Metric metric_from_string(const std::string& s) {
  if (s == "linear") return Metric::linear;
  if (s == "quadratic") return Metric::quadratic;
  throw ConfigError("unknown metric '" + s + "' (expected linear or quadratic)");
}

Linkage linkage_from_string(const std::string& s) {
  if (s == "single") return Linkage::single;
  if (s == "complete") return Linkage::complete;
  if (s == "ward") return Linkage::ward;
  throw ConfigError("unknown linkage '" + s + "' (expected single, complete or ward)");
}

DissimilarityMatrix to_dissimilarity(const CorrelationMatrix& r, Metric kind) {
  const std::size_t n = r.values.size();
  DissimilarityMatrix d;
  d.labels = r.labels;
  d.metric_kind = kind;
  d.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        d.values.at(i, j) = 0.0;
        continue;
      }
      const double rij = r.values.at(i, j);
      d.values.at(i, j) = kind == Metric::linear ? 1.0 - std::abs(rij)
                                                 : std::sqrt(std::max(0.0, 1.0 - rij * rij));
    }
  }
  return d;
}

Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage) {
  const std::size_t n = d.values.size();
  if (n < 2) throw InsufficientLabelsError("agglomeration needs at least 2 labels");

  const std::size_t total = 2 * n - 1;
  std::vector<double> dist(total * total, 0.0);
  std::vector<std::size_t> size(total, 0);
  std::vector<bool> active(total, false);
  for (std::size_t i = 0; i < n; ++i) {
    size[i] = 1;
    active[i] = true;
    for (std::size_t j = 0; j < n; ++j) dist[i * total + j] = d.values.at(i, j);
  }

  Dendrogram dendro;
  dendro.leaves = d.labels;
  dendro.merges.reserve(n - 1);

  for (std::size_t t = 0; t < n - 1; ++t) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < total; ++j) {
        if (!active[j]) continue;
        const double v = dist[i * total + j];
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }

    const std::size_t u = n + t;
    size[u] = size[bi] + size[bj];
    dendro.merges.push_back({bi, bj, best, size[u]});
    active[bi] = false;
    active[bj] = false;

    const double na = static_cast<double>(size[bi]);
    const double nb = static_cast<double>(size[bj]);
    const double dab = best;
    for (std::size_t k = 0; k < u; ++k) {
      if (!active[k]) continue;
      const double dak = dist[bi * total + k];
      const double dbk = dist[bj * total + k];
      double value = 0.0;
      switch (linkage) {
        case Linkage::single:
          value = std::min(dak, dbk);
          break;
        case Linkage::complete:
          value = std::max(dak, dbk);
          break;
        case Linkage::ward: {
          const double nk = static_cast<double>(size[k]);
          value = ((na + nk) * dak + (nb + nk) * dbk - nk * dab) / (na + nb + nk);
          break;
        }
      }
      dist[u * total + k] = value;
      dist[k * total + u] = value;
    }
    active[u] = true;
  }
  return dendro;
}

bool has_inversion(const Dendrogram& dendro) {
  for (std::size_t t = 1; t < dendro.merges.size(); ++t)
    if (dendro.merges[t].height < dendro.merges[t - 1].height) return true;
  return false;
}

std::vector<std::vector<std::size_t>> cut_at(const Dendrogram& dendro, double height) {
  const std::size_t n = dendro.leaf_count();
  const std::size_t total = 2 * n - 1;

  // ok[v]: every merge height inside the subtree rooted at v is <= height.
  std::vector<bool> ok(total, true);
  std::vector<std::vector<std::size_t>> children(total);
  for (std::size_t t = 0; t < dendro.merges.size(); ++t) {
    const auto& m = dendro.merges[t];
    const std::size_t v = n + t;
    children[v] = {m.left, m.right};
    ok[v] = m.height <= height && ok[m.left] && ok[m.right];
  }

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> stack{total - 1};
  if (n == 1) stack = {0};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (ok[v]) {
      // Collect the subtree's leaves as one group.
      std::vector<std::size_t> group;
      std::vector<std::size_t> inner{v};
      while (!inner.empty()) {
        const std::size_t w = inner.back();
        inner.pop_back();
        if (w < n) {
          group.push_back(w);
        } else {
          inner.insert(inner.end(), children[w].begin(), children[w].end());
        }
      }
      std::sort(group.begin(), group.end());
      groups.push_back(std::move(group));
    } else {
      stack.insert(stack.end(), children[v].begin(), children[v].end());
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

}  // namespace stereogen
