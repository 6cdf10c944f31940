#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "markov/mle.hpp"
#include "markov/rng.hpp"
#include "markov/types.hpp"

namespace markov {

struct BootstrapConfig {
  int B = 0;           // number of resamples, at least 2
  std::int64_t n = 0;  // length of each resample
  TransitionMatrix generator;
  std::optional<Distribution> initial;  // defaults to uniform over generator.dim()
  SeedSpec seed;
};

// B vectorized estimators with their sample mean and covariance
// (divisor B-1).
struct BootstrapBatch {
  int d = 0;
  int B = 0;
  std::vector<double> estimates;   // B x d^2 row-major, one resample per row
  std::vector<double> mean;        // length d^2
  std::vector<double> covariance;  // d^2 x d^2 row-major

  double estimate_at(int k, int i, int j) const {  // resample k, cell (i,j) 0-based
    return estimates[(static_cast<std::size_t>(k) * d + i) * d + j];
  }
  // The B values of cell (i,j) across resamples, in resample order.
  std::vector<double> cell_values(int i, int j) const;
};

// Draws B chains of length n from the generator (resample k on the stream
// with stream_id = k), estimates each, and aggregates in resample order.
// The result is bit-identical for a given config at any worker count.
BootstrapBatch run_bootstrap(const BootstrapConfig& cfg, int workers = 1);

// Right-continuous step function F(x) = (#values <= x) / size.
class EmpiricalCDF {
 public:
  explicit EmpiricalCDF(std::vector<double> values);

  double operator()(double x) const noexcept;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted_values() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

EmpiricalCDF empirical_cdf(std::vector<double> values);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;  // per-tail level

  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
  double width() const noexcept { return upper - lower; }
};

// Percentile interval over the sample:
//   x_L = max{x in values : F(x) <= alpha}, or min(values) when no sample
//         value qualifies (the smallest value may already carry mass > alpha);
//   x_U = min{x in values : F(x) >= 1 - alpha}.
// Both endpoints are always sample values, never interpolated.  alpha is the
// per-tail level and must lie in (0, 0.5).
ConfidenceInterval percentile_ci(const std::vector<double>& values, double alpha);

// Per-cell percentile intervals from a batch, d x d row-major.
std::vector<ConfidenceInterval> element_cis(const BootstrapBatch& batch, double alpha);

}  // namespace markov
