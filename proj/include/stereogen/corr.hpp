#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stereogen/ingest.hpp"
#include "stereogen/matrix.hpp"

namespace stereogen {

struct CorrelationMatrix {
  std::vector<std::string> labels;
  SquareMatrix values;
};

/// Population covariance (divide by M) of the binary columns.
SquareMatrix covariance(const MultiHotMatrix& m);

/// Pearson correlation; zero-variance columns get 0 off-diagonal, 1 on the
/// diagonal so no label is ever dropped.
CorrelationMatrix correlation(const MultiHotMatrix& m);

/// Linear penalty 1 - |R| with a zero diagonal.
SquareMatrix penalty(const CorrelationMatrix& r);

struct Permutation {
  std::vector<std::size_t> order;
  double objective_value = 0.0;
};

/// Diagonal-mass objective: sum over pairs of |R| weighted by 1/(1+distance).
double seriation_objective(const SquareMatrix& values, const std::vector<std::size_t>& order);

/// Best-improvement pairwise-swap hill climb from the identity ordering.
/// Exploratory reordering only; stereotype extraction does not depend on it.
Permutation seriate_greedy(const CorrelationMatrix& r);

CorrelationMatrix apply_permutation(const CorrelationMatrix& r,
                                    const std::vector<std::size_t>& order);

}  // namespace stereogen
