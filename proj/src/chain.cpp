#include "markov/chain.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace markov {

TransitionMatrix validate_matrix(const std::vector<std::vector<double>>& raw) {
  return TransitionMatrix(raw);
}

int sample_categorical(std::span<const double> probs, double u) noexcept {
  const int d = static_cast<int>(probs.size());
  double cum = 0.0;
  for (int j = 0; j < d - 1; ++j) {
    cum += probs[static_cast<std::size_t>(j)];
    if (u < cum) return j;
  }
  return d - 1;
}

StateSequence generate_chain(const TransitionMatrix& P, const Distribution& initial,
                             std::int64_t n, SeedSpec seed) {
  if (initial.dim() != P.dim()) {
    throw DimensionMismatchError("initial distribution dimension " +
                                 std::to_string(initial.dim()) +
                                 " does not match matrix dimension " +
                                 std::to_string(P.dim()));
  }
  if (n < 1) throw SequenceTooShortError("chain length must be at least 1");

  Rng rng(seed);
  std::vector<int> x;
  x.reserve(static_cast<std::size_t>(n));
  int state = sample_categorical(initial.probs(), rng.next_unit());
  x.push_back(state);
  for (std::int64_t t = 1; t < n; ++t) {
    state = sample_categorical(P.row(state), rng.next_unit());
    x.push_back(state);
  }
  return StateSequence(P.dim(), std::move(x));
}

namespace {

// Max over columns of (max_i - min_i): zero exactly when all rows coincide.
double row_divergence(const SquareMatrix& m) {
  double worst = 0.0;
  for (int j = 0; j < m.d; ++j) {
    double lo = m.at(0, j);
    double hi = lo;
    for (int i = 1; i < m.d; ++i) {
      const double v = m.at(i, j);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    if (hi - lo > worst) worst = hi - lo;
  }
  return worst;
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  const int d = a.d;
  SquareMatrix out{d, std::vector<double>(static_cast<std::size_t>(d) * d, 0.0)};
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < d; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

SquareMatrix as_square(const TransitionMatrix& P) {
  return SquareMatrix{P.dim(), P.values()};
}

}  // namespace

std::optional<Distribution> steady_state(const TransitionMatrix& P, double tol,
                                         std::uint64_t max_power) {
  SquareMatrix power = as_square(P);
  std::uint64_t m = 1;
  while (row_divergence(power) >= tol) {
    if (m >= max_power) return std::nullopt;
    power = multiply(power, power);
    m *= 2;
  }
  // Rows agree within tol; average them and renormalize to shed the residual.
  const int d = P.dim();
  std::vector<double> pi(static_cast<std::size_t>(d), 0.0);
  for (int j = 0; j < d; ++j) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i) sum += power.at(i, j);
    pi[static_cast<std::size_t>(j)] = sum / d;
  }
  double total = 0.0;
  for (double v : pi) total += v;
  for (double& v : pi) v /= total;
  return Distribution(std::move(pi));
}

TransitionMatrix two_state_power(double a, std::int64_t m) {
  if (a < 0.0 || a >= 1.0) {
    throw ParameterOutOfRangeError("two-state parameter must lie in [0, 1)");
  }
  if (m < 1) throw ParameterOutOfRangeError("power must be at least 1");
  const double am = std::pow(a, static_cast<double>(m));
  const double p = (1.0 + am) / 2.0;
  const double q = (1.0 - am) / 2.0;
  return TransitionMatrix(2, {p, q, q, p});
}

SquareMatrix matrix_power(const TransitionMatrix& P, std::uint64_t m) {
  if (m == 0) throw ParameterOutOfRangeError("power must be at least 1");
  const int d = P.dim();
  SquareMatrix base = as_square(P);
  SquareMatrix result{d, std::vector<double>(static_cast<std::size_t>(d) * d, 0.0)};
  for (int i = 0; i < d; ++i) result.at(i, i) = 1.0;
  while (m > 0) {
    if (m & 1) result = multiply(result, base);
    m >>= 1;
    if (m > 0) base = multiply(base, base);
  }
  return result;
}

}  // namespace markov
