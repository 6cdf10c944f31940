#include "markov/mle.hpp"

#include <cmath>
#include <utility>

namespace markov {

TransitionCounts count_transitions(const StateSequence& seq) {
  const int d = seq.dim();
  TransitionCounts counts{d, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0),
                          std::vector<std::int64_t>(static_cast<std::size_t>(d) * d, 0)};
  for (int k = 0; k + 1 < seq.size(); ++k) {
    const int from = seq[k];
    const int to = seq[k + 1];
    ++counts.visits[static_cast<std::size_t>(from)];
    ++counts.transitions[static_cast<std::size_t>(from) * d + to];
  }
  return counts;
}

TransitionMatrix mle_estimate(const StateSequence& seq) {
  if (seq.size() < 2) {
    throw SequenceTooShortError("need at least 2 observations to estimate");
  }
  const TransitionCounts counts = count_transitions(seq);
  const int d = counts.d;
  std::vector<double> p(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) {
    const std::int64_t ni = counts.visits[static_cast<std::size_t>(i)];
    if (ni == 0) {
      // No transition ever left state i; the estimate keeps it absorbing.
      p[static_cast<std::size_t>(i) * d + i] = 1.0;
      continue;
    }
    for (int j = 0; j < d; ++j) {
      p[static_cast<std::size_t>(i) * d + j] =
          static_cast<double>(counts.at(i, j)) / static_cast<double>(ni);
    }
  }
  return TransitionMatrix(d, std::move(p));
}

VectorizedMatrix VectorizedMatrix::from_values(std::vector<double> values) {
  const auto len = values.size();
  const int d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(len))));
  if (d < 1 || static_cast<std::size_t>(d) * d != len) {
    throw LengthNotSquareError("vector length " + std::to_string(len) +
                               " is not a perfect square");
  }
  return VectorizedMatrix{d, std::move(values)};
}

VectorizedMatrix vectorize(const TransitionMatrix& P) {
  return VectorizedMatrix{P.dim(), P.values()};
}

TransitionMatrix devectorize(const VectorizedMatrix& v) {
  return TransitionMatrix(v.d, v.values);
}

AsymptoticCovariance asymptotic_covariance(const TransitionMatrix& P) {
  const int d = P.dim();
  const int dd = d * d;
  AsymptoticCovariance cov{d, std::vector<double>(static_cast<std::size_t>(dd) * dd, 0.0)};
  // Only the diagonal blocks i == k are nonzero.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) {
        const double delta_jl = (j == l) ? 1.0 : 0.0;
        const std::size_t r = static_cast<std::size_t>(i) * d + j;
        const std::size_t c = static_cast<std::size_t>(i) * d + l;
        cov.entries[r * dd + c] = P(i, j) * (delta_jl - P(i, l));
      }
    }
  }
  return cov;
}

}  // namespace markov
