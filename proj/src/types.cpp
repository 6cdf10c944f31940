#include "markov/types.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace markov {

namespace {

std::string negative_entry_message(int i, int j, double value) {
  std::ostringstream os;
  os << "negative entry " << value << " at (" << i << ", " << j << ")";
  return os.str();
}

std::string row_sum_message(int i, double sum) {
  std::ostringstream os;
  os << "row " << i << " sums to " << sum << ", not 1";
  return os.str();
}

}  // namespace

NegativeEntryError::NegativeEntryError(int i, int j, double value)
    : Error(negative_entry_message(i, j, value)), row(i), col(j) {}

RowSumViolationError::RowSumViolationError(int i, double sum)
    : Error(row_sum_message(i, sum)), row(i), row_sum(sum) {}

TransitionMatrix::TransitionMatrix(const std::vector<std::vector<double>>& rows) {
  d_ = static_cast<int>(rows.size());
  if (d_ < 1) throw NonSquareError("matrix has no rows");
  p_.reserve(static_cast<std::size_t>(d_) * d_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != d_) {
      throw NonSquareError("matrix is not square");
    }
    p_.insert(p_.end(), row.begin(), row.end());
  }
  validate_and_normalize();
}

TransitionMatrix::TransitionMatrix(int d, std::vector<double> row_major)
    : d_(d), p_(std::move(row_major)) {
  if (d_ < 1) throw NonSquareError("matrix has no rows");
  if (p_.size() != static_cast<std::size_t>(d_) * d_) {
    throw NonSquareError("matrix is not square");
  }
  validate_and_normalize();
}

TransitionMatrix TransitionMatrix::identity(int d) {
  std::vector<double> p(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i) * d + i] = 1.0;
  return TransitionMatrix(d, std::move(p));
}

void TransitionMatrix::validate_and_normalize() {
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) {
      const double v = p_[static_cast<std::size_t>(i) * d_ + j];
      if (std::isnan(v) || v < 0.0) throw NegativeEntryError(i, j, v);
    }
  }
  for (int i = 0; i < d_; ++i) {
    double sum = 0.0;
    for (int j = 0; j < d_; ++j) sum += p_[static_cast<std::size_t>(i) * d_ + j];
    if (std::abs(sum - 1.0) > kRowSumTol) throw RowSumViolationError(i, sum);
    for (int j = 0; j < d_; ++j) p_[static_cast<std::size_t>(i) * d_ + j] /= sum;
  }
}

Distribution::Distribution(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw DimensionMismatchError("distribution has no entries");
  double sum = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (std::isnan(p_[i]) || p_[i] < 0.0) {
      throw NegativeEntryError(0, static_cast<int>(i), p_[i]);
    }
    sum += p_[i];
  }
  if (std::abs(sum - 1.0) > kRowSumTol) throw RowSumViolationError(0, sum);
  for (double& v : p_) v /= sum;
}

Distribution Distribution::uniform(int d) {
  if (d < 1) throw ParameterOutOfRangeError("dimension must be positive");
  return Distribution(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

Distribution Distribution::point_mass(int d, int state) {
  if (d < 1) throw ParameterOutOfRangeError("dimension must be positive");
  if (state < 0 || state >= d) {
    throw ParameterOutOfRangeError("point mass state out of range");
  }
  std::vector<double> p(static_cast<std::size_t>(d), 0.0);
  p[static_cast<std::size_t>(state)] = 1.0;
  return Distribution(std::move(p));
}

StateSequence::StateSequence(int d, std::vector<int> states)
    : d_(d), x_(std::move(states)) {
  if (d_ < 1) throw ParameterOutOfRangeError("state space must be nonempty");
  if (x_.empty()) throw SequenceTooShortError("sequence has no observations");
  for (int s : x_) {
    if (s < 0 || s >= d_) {
      throw ParameterOutOfRangeError("state " + std::to_string(s + 1) +
                                     " outside 1.." + std::to_string(d_));
    }
  }
}

}  // namespace markov
