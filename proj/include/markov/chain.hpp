#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "markov/rng.hpp"
#include "markov/types.hpp"

namespace markov {

// Validates a raw square array as a transition matrix (entries in [0,1],
// row sums within kRowSumTol of 1) and renormalizes the rows.
TransitionMatrix validate_matrix(const std::vector<std::vector<double>>& raw);

// Inverse-CDF draw from probs given u in [0,1): cumulate left to right, the
// final cumulative value acting as 1 so rounding in the tail lands on the
// last state.  Returns a 0-based index.
int sample_categorical(std::span<const double> probs, double u) noexcept;

// Simulates X_1..X_n; X_1 from `initial`, each next state from the current
// state's row.  Pure function of its arguments: equal inputs (seed included)
// give bit-identical sequences.
StateSequence generate_chain(const TransitionMatrix& P, const Distribution& initial,
                             std::int64_t n, SeedSpec seed);

constexpr double kSteadyStateTol = 1e-10;
constexpr std::uint64_t kSteadyStateMaxPower = std::uint64_t{1} << 40;

// Long-run state probabilities as the limit of matrix powers, computed by
// repeated squaring.  Convergence means the rows of P^m coincide: the max
// over columns of (max_i - min_i) falls below tol.  Returns nullopt when no
// power up to max_power has coinciding rows (periodic or reducible chain).
std::optional<Distribution> steady_state(const TransitionMatrix& P,
                                         double tol = kSteadyStateTol,
                                         std::uint64_t max_power = kSteadyStateMaxPower);

// Closed form for the m-th power of the symmetric two-state chain
// [[(1+a)/2, (1-a)/2], [(1-a)/2, (1+a)/2]]; requires 0 <= a < 1.
// Serves as an oracle for matrix powers and steady states.
TransitionMatrix two_state_power(double a, std::int64_t m);

// Raw m-th power (square-and-multiply), no renormalization of the product.
SquareMatrix matrix_power(const TransitionMatrix& P, std::uint64_t m);

}  // namespace markov
