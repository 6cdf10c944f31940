#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace markov {

// Row sums of an input matrix (and the total mass of a distribution) may
// deviate from 1 by at most this much; accepted rows are renormalized.
inline constexpr double kRowSumTol = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonSquareError : public Error {
 public:
  using Error::Error;
};

class NegativeEntryError : public Error {
 public:
  NegativeEntryError(int i, int j, double value);
  int row;  // 0-based
  int col;  // 0-based
};

class RowSumViolationError : public Error {
 public:
  RowSumViolationError(int i, double sum);
  int row;  // 0-based
  double row_sum;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class SequenceTooShortError : public Error {
 public:
  using Error::Error;
};

class ParameterOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class AlphaOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class EmptySampleError : public Error {
 public:
  using Error::Error;
};

class EmptyListError : public Error {
 public:
  using Error::Error;
};

class LengthNotSquareError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Square matrix of unconstrained reals, row-major.  Used for diagnostics
// (scaled deviations, raw matrix powers) where rows are not probabilities.
struct SquareMatrix {
  int d = 0;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * d + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * d + j]; }
};

// Row-stochastic d x d matrix.  Construction validates that every entry is
// nonnegative and every row sums to 1 within kRowSumTol, then divides each
// row by its sum so the stored rows carry no input rounding.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(const std::vector<std::vector<double>>& rows);
  TransitionMatrix(int d, std::vector<double> row_major);

  static TransitionMatrix identity(int d);

  int dim() const noexcept { return d_; }
  double operator()(int i, int j) const noexcept {  // 0-based
    return p_[static_cast<std::size_t>(i) * d_ + j];
  }
  std::span<const double> row(int i) const noexcept {
    return {p_.data() + static_cast<std::size_t>(i) * d_, static_cast<std::size_t>(d_)};
  }
  const std::vector<double>& values() const noexcept { return p_; }

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  void validate_and_normalize();

  int d_ = 0;
  std::vector<double> p_;  // row-major
};

// Probability vector over d states; validated and renormalized like a matrix row.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(int d);
  static Distribution point_mass(int d, int state);  // state 0-based

  int dim() const noexcept { return static_cast<int>(p_.size()); }
  double operator[](int i) const noexcept { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probs() const noexcept { return p_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> p_;
};

// Observed states X_1..X_n over {0..d-1}.  States are 0-based here; all file
// and CLI surfaces speak 1-based and convert at the boundary.
class StateSequence {
 public:
  StateSequence(int d, std::vector<int> states);

  int dim() const noexcept { return d_; }
  int size() const noexcept { return static_cast<int>(x_.size()); }
  int operator[](int k) const noexcept { return x_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& states() const noexcept { return x_; }

  friend bool operator==(const StateSequence&, const StateSequence&) = default;

 private:
  int d_ = 0;
  std::vector<int> x_;
};

}  // namespace markov
