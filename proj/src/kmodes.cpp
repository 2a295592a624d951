#include "stereogen/kmodes.hpp"

#include <algorithm>
#include <limits>

#include "stereogen/errors.hpp"
#include "stereogen/rng.hpp"

namespace stereogen {

std::string to_string(InitKind k) { return k == InitKind::huang ? "huang" : "cao"; }

InitKind init_from_string(const std::string& s) {
  if (s == "huang") return InitKind::huang;
  if (s == "cao") return InitKind::cao;
  throw ConfigError("unknown init '" + s + "' (expected huang or cao)");
}

std::size_t matching_dissimilarity(const CategoricalRow& a, const CategoricalRow& b) {
  if (a.size() != b.size())
    throw Error("matching dissimilarity on vectors of lengths " + std::to_string(a.size()) +
                " and " + std::to_string(b.size()));
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++count;
  return count;
}

std::vector<CategoricalRow> rows_of(const MultiHotMatrix& m) {
  std::vector<CategoricalRow> rows(m.rows(), CategoricalRow(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}

std::vector<CategoricalRow> distinct_rows(const std::vector<CategoricalRow>& rows) {
  std::vector<CategoricalRow> distinct;
  for (const auto& row : rows)
    if (std::find(distinct.begin(), distinct.end(), row) == distinct.end()) distinct.push_back(row);
  return distinct;
}

namespace {

void check_k(std::size_t k, std::size_t distinct_count) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (k > distinct_count)
    throw ConfigError("k = " + std::to_string(k) + " exceeds the " +
                      std::to_string(distinct_count) + " distinct rows");
}

/// Nearest candidate to probe, skipping already-chosen ones. Ties go to the
/// earliest candidate.
std::size_t snap_to_candidate(const CategoricalRow& probe,
                              const std::vector<CategoricalRow>& candidates,
                              const std::vector<bool>& taken) {
  std::size_t best = candidates.size();
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (taken[i]) continue;
    const std::size_t d = matching_dissimilarity(probe, candidates[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<CategoricalRow> init_huang(const std::vector<CategoricalRow>& rows, std::size_t k,
                                       std::uint64_t seed) {
  if (rows.empty()) throw InsufficientDataError("k-modes needs at least one row");
  const std::vector<CategoricalRow> candidates = distinct_rows(rows);
  check_k(k, candidates.size());

  const std::size_t n = rows.front().size();
  std::vector<double> freq(n, 0.0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < n; ++j) freq[j] += row[j] ? 1.0 : 0.0;
  for (double& f : freq) f /= static_cast<double>(rows.size());

  Rng rng(seed);
  std::vector<bool> taken(candidates.size(), false);
  std::vector<CategoricalRow> modes;
  modes.reserve(k);
  for (std::size_t m = 0; m < k; ++m) {
    CategoricalRow probe(n);
    for (std::size_t j = 0; j < n; ++j) probe[j] = rng.uniform() < freq[j] ? 1 : 0;
    const std::size_t pick = snap_to_candidate(probe, candidates, taken);
    taken[pick] = true;
    modes.push_back(candidates[pick]);
  }
  return modes;
}

std::vector<CategoricalRow> init_cao(const std::vector<CategoricalRow>& rows, std::size_t k) {
  if (rows.empty()) throw InsufficientDataError("k-modes needs at least one row");
  const std::vector<CategoricalRow> candidates = distinct_rows(rows);
  check_k(k, candidates.size());

  const std::size_t n = rows.front().size();
  const double M = static_cast<double>(rows.size());
  std::vector<std::size_t> ones(n, 0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < n; ++j) ones[j] += row[j] ? 1 : 0;

  // Average matching similarity of a row to the whole dataset, attributewise.
  const auto density = [&](const CategoricalRow& row) {
    double agree = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      agree += row[j] ? static_cast<double>(ones[j]) : M - static_cast<double>(ones[j]);
    return agree / (M * static_cast<double>(n));
  };

  std::vector<double> dens(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) dens[i] = density(candidates[i]);

  std::vector<bool> taken(candidates.size(), false);
  std::vector<CategoricalRow> modes;
  modes.reserve(k);

  std::size_t first = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (dens[i] > dens[first]) first = i;
  taken[first] = true;
  modes.push_back(candidates[first]);

  while (modes.size() < k) {
    std::size_t best = candidates.size();
    double best_score = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (taken[i]) continue;
      std::size_t min_d = std::numeric_limits<std::size_t>::max();
      for (const auto& mode : modes)
        min_d = std::min(min_d, matching_dissimilarity(candidates[i], mode));
      const double score = dens[i] * static_cast<double>(min_d);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    taken[best] = true;
    modes.push_back(candidates[best]);
  }
  return modes;
}

namespace {

std::pair<std::vector<std::size_t>, double> assign_rows(const std::vector<CategoricalRow>& rows,
                                                        const std::vector<CategoricalRow>& modes) {
  std::vector<std::size_t> assignments(rows.size(), 0);
  double cost = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t best = 0;
    std::size_t best_d = matching_dissimilarity(rows[r], modes[0]);
    for (std::size_t m = 1; m < modes.size(); ++m) {
      const std::size_t d = matching_dissimilarity(rows[r], modes[m]);
      if (d < best_d) {
        best_d = d;
        best = m;
      }
    }
    assignments[r] = best;
    cost += static_cast<double>(best_d);
  }
  return {std::move(assignments), cost};
}

void update_modes(const std::vector<CategoricalRow>& rows,
                  const std::vector<std::size_t>& assignments,
                  std::vector<CategoricalRow>& modes) {
  const std::size_t n = rows.front().size();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    std::size_t members = 0;
    std::vector<std::size_t> trues(n, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (assignments[r] != m) continue;
      ++members;
      for (std::size_t j = 0; j < n; ++j) trues[j] += rows[r][j] ? 1 : 0;
    }
    if (members == 0) continue;
    for (std::size_t j = 0; j < n; ++j) modes[m][j] = 2 * trues[j] > members ? 1 : 0;
  }
}

}  // namespace

bool repair_empty_clusters(const std::vector<CategoricalRow>& rows,
                           std::vector<CategoricalRow>& modes,
                           std::vector<std::size_t>& assignments) {
  bool repaired_any = false;
  for (std::size_t round = 0; round < modes.size(); ++round) {
    std::vector<bool> used(modes.size(), false);
    for (const std::size_t a : assignments) used[a] = true;
    std::size_t empty = modes.size();
    for (std::size_t m = 0; m < modes.size(); ++m) {
      if (!used[m]) {
        empty = m;
        break;
      }
    }
    if (empty == modes.size()) return repaired_any;
    std::size_t farthest = 0;
    std::size_t far_d = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t d = matching_dissimilarity(rows[r], modes[empty]);
      if (d > far_d) {
        far_d = d;
        farthest = r;
      }
    }
    modes[empty] = rows[farthest];
    assignments = assign_rows(rows, modes).first;
    repaired_any = true;
  }
  return repaired_any;
}

KModesModel fit(const std::vector<CategoricalRow>& rows, std::size_t k, InitKind init,
                std::uint64_t seed, std::size_t max_iter) {
  if (rows.empty()) throw InsufficientDataError("k-modes needs at least one row");
  KModesModel model;
  model.k = k;
  model.init_kind = init;
  model.seed = seed;
  model.modes = init == InitKind::huang ? init_huang(rows, k, seed) : init_cao(rows, k);

  const auto cost_under = [&](const std::vector<std::size_t>& assignments) {
    double cost = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r)
      cost += static_cast<double>(matching_dissimilarity(rows[r], model.modes[assignments[r]]));
    return cost;
  };

  bool converged = false;
  for (std::size_t iter = 1; iter <= max_iter && !converged; ++iter) {
    auto assigned = assign_rows(rows, model.modes);
    if (repair_empty_clusters(rows, model.modes, assigned.first))
      assigned = assign_rows(rows, model.modes);
    model.assignments = std::move(assigned.first);
    model.cost = assigned.second;
    model.iterations = iter;
    model.cost_history.push_back(model.cost);

    const auto old_modes = model.modes;
    update_modes(rows, model.assignments, model.modes);
    // Unchanged modes reproduce the same assignments next round: fixed point.
    converged = model.modes == old_modes;
    if (!converged) model.cost_history.push_back(cost_under(model.assignments));
  }
  if (!converged) {
    auto assigned = assign_rows(rows, model.modes);
    if (repair_empty_clusters(rows, model.modes, assigned.first))
      assigned = assign_rows(rows, model.modes);
    model.assignments = std::move(assigned.first);
    model.cost = assigned.second;
    model.cost_history.push_back(model.cost);
  }
  return model;
}

std::vector<std::pair<std::size_t, double>> elbow_scan(const std::vector<CategoricalRow>& rows,
                                                       const std::vector<std::size_t>& k_values,
                                                       InitKind init, std::uint64_t seed) {
  if (k_values.empty()) throw ConfigError("elbow scan needs at least one k");
  std::vector<std::pair<std::size_t, double>> scan;
  scan.reserve(k_values.size());
  for (const std::size_t k : k_values) scan.emplace_back(k, fit(rows, k, init, seed).cost);
  return scan;
}

}  // namespace stereogen
