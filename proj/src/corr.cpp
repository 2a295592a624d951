#include "stereogen/corr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "stereogen/errors.hpp"

namespace stereogen {

SquareMatrix covariance(const MultiHotMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  if (rows < 2) throw InsufficientDataError("covariance needs at least 2 items");

  // Integer co-occurrence counts keep the result independent of row order.
  std::vector<std::int64_t> ones(n, 0);
  std::vector<std::int64_t> co(n * n, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < n; ++j)
      if (m.at(r, j)) active.push_back(j);
    for (const std::size_t j : active) ++ones[j];
    for (const std::size_t a : active)
      for (const std::size_t b : active) ++co[a * n + b];
  }

  const double M = static_cast<double>(rows);
  SquareMatrix cv(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double value =
          (M * static_cast<double>(co[i * n + j]) -
           static_cast<double>(ones[i]) * static_cast<double>(ones[j])) /
          (M * M);
      cv.at(i, j) = value;
      cv.at(j, i) = value;
    }
  }
  return cv;
}

CorrelationMatrix correlation(const MultiHotMatrix& m) {
  const SquareMatrix cv = covariance(m);
  const std::size_t n = cv.size();
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = std::sqrt(cv.at(i, i));

  CorrelationMatrix r;
  r.labels = m.col_labels;
  r.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double value = 0.0;
      if (sigma[i] > 0.0 && sigma[j] > 0.0) {
        value = cv.at(i, j) / (sigma[i] * sigma[j]);
        value = std::clamp(value, -1.0, 1.0);
      }
      r.values.at(i, j) = value;
      r.values.at(j, i) = value;
    }
  }
  return r;
}

SquareMatrix penalty(const CorrelationMatrix& r) {
  const std::size_t n = r.values.size();
  SquareMatrix p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p.at(i, j) = i == j ? 0.0 : 1.0 - std::abs(r.values.at(i, j));
  return p;
}

double seriation_objective(const SquareMatrix& values, const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      total += std::abs(values.at(order[i], order[j])) / (1.0 + static_cast<double>(j - i));
  return total;
}

Permutation seriate_greedy(const CorrelationMatrix& r) {
  const std::size_t n = r.values.size();
  if (n < 2) throw InsufficientLabelsError("seriation needs at least 2 labels");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  double objective = seriation_objective(r.values, order);

  const auto weight = [](std::size_t a, std::size_t b) {
    const std::size_t d = a > b ? a - b : b - a;
    return 1.0 / (1.0 + static_cast<double>(d));
  };
  // Swapping positions p,q only changes pairs involving p or q.
  const auto swap_delta = [&](std::size_t p, std::size_t q) {
    double delta = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == p || t == q) continue;
      const double vp = std::abs(r.values.at(order[t], order[p]));
      const double vq = std::abs(r.values.at(order[t], order[q]));
      delta += (vq - vp) * (weight(t, p) - weight(t, q));
    }
    return delta;
  };

  constexpr double kEps = 1e-12;
  for (;;) {
    double best_delta = kEps;
    std::size_t best_p = 0, best_q = 0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double delta = swap_delta(p, q);
        if (delta > best_delta) {
          best_delta = delta;
          best_p = p;
          best_q = q;
        }
      }
    }
    if (best_p == best_q) break;
    std::swap(order[best_p], order[best_q]);
    objective += best_delta;
  }
  objective = seriation_objective(r.values, order);
  return {std::move(order), objective};
}

CorrelationMatrix apply_permutation(const CorrelationMatrix& r,
                                    const std::vector<std::size_t>& order) {
  const std::size_t n = r.values.size();
  CorrelationMatrix out;
  out.labels.reserve(n);
  out.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.labels.push_back(r.labels[order[i]]);
    for (std::size_t j = 0; j < n; ++j) out.values.at(i, j) = r.values.at(order[i], order[j]);
  }
  return out;
}

}  // namespace stereogen
