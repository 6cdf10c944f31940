#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "markov/bootstrap.hpp"
#include "markov/smoothing.hpp"

namespace markov {

// One coverage experiment: R replications, each drawing a chain from the
// truth, bootstrapping it once per smoothing arm, and recording whether the
// percentile interval for each tracked cell contains the true entry.
struct StudyConfig {
  TransitionMatrix truth;
  std::string truth_name;  // label used in reports
  std::vector<int> n_grid;
  std::vector<SmoothingParam> u_grid;
  int B = 5000;
  int R = 1000;
  double nominal = 0.90;  // two-sided level; per-tail alpha is (1-nominal)/2
  std::vector<std::pair<int, int>> tracked_cells;  // 0-based (i,j)
  SeedSpec seed;
};

struct CoverageCell {
  int n = 0;
  SmoothingParam u = SmoothingParam::infinite();
  int i = 0;  // 0-based tracked cell
  int j = 0;
  double coverage = 0.0;
  double mean_width = 0.0;
  int replications = 0;
};

struct CoverageReport {
  std::string truth_name;
  double nominal = 0.0;
  std::vector<CoverageCell> cells;  // n-grid major, then u-grid, then cell order

  const CoverageCell& find(int n, const SmoothingParam& u, int i, int j) const;
};

// Runs the experiment.  All u-arms of a replication share that replication's
// chain and bootstrap streams (common random numbers), so arm differences
// reflect the generator matrix, not sampling noise.  Deterministic for a
// fixed seed at any worker count.
CoverageReport run_study(const StudyConfig& cfg, int workers = 1);

// Fraction of intervals containing true_value (closed endpoints).
double coverage(const std::vector<ConfidenceInterval>& intervals, double true_value);

// The study matrices: "P_I" and "P_II" (3x3) and the 4x4 "Eq8" example.
const std::map<std::string, TransitionMatrix>& builtin_matrices();

}  // namespace markov
