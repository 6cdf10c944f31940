#pragma once

#include <cstdint>
#include <vector>

#include "markov/types.hpp"

namespace markov {

// Visit counts n_i over X_1..X_{n-1} and transition counts n_ij.  The final
// observed state is not counted as a visit: no transition leaves it.
struct TransitionCounts {
  int d = 0;
  std::vector<std::int64_t> visits;       // length d
  std::vector<std::int64_t> transitions;  // d x d row-major

  std::int64_t at(int i, int j) const {
    return transitions[static_cast<std::size_t>(i) * d + j];
  }
};

TransitionCounts count_transitions(const StateSequence& seq);

// Row i of the estimate is transitions[i]/visits[i]; a state never visited
// before the last observation gets the identity row (P_ii = 1).
TransitionMatrix mle_estimate(const StateSequence& seq);

// vec(P): P_ij at position j + (i-1)d for 1-based (i,j), i.e. the rows of P
// laid out in order.
struct VectorizedMatrix {
  int d = 0;
  std::vector<double> values;  // length d*d

  // Infers d from the length; throws LengthNotSquareError if it is not a
  // perfect square.
  static VectorizedMatrix from_values(std::vector<double> values);
};

VectorizedMatrix vectorize(const TransitionMatrix& P);
TransitionMatrix devectorize(const VectorizedMatrix& v);

// Covariance of the vectorized estimator: entry at row j+(i-1)d, column
// l+(k-1)d equals delta_ik * P_ij * (delta_jl - P_il).  Block-diagonal in
// (i,k); each block is the multinomial covariance of row i.
struct AsymptoticCovariance {
  int d = 0;
  std::vector<double> entries;  // (d*d) x (d*d) row-major

  int dim() const noexcept { return d * d; }
  double at(int r, int c) const {
    return entries[static_cast<std::size_t>(r) * dim() + c];
  }
};

AsymptoticCovariance asymptotic_covariance(const TransitionMatrix& P);

}  // namespace markov
