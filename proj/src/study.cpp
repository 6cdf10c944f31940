#include "markov/study.hpp"

#include <atomic>
#include <cstdint>
#include <thread>
#include <utility>

#include "markov/chain.hpp"
#include "markov/mle.hpp"

namespace markov {

const CoverageCell& CoverageReport::find(int n, const SmoothingParam& u, int i,
                                         int j) const {
  for (const CoverageCell& cell : cells) {
    if (cell.n == n && cell.u == u && cell.i == i && cell.j == j) return cell;
  }
  throw Error("no coverage cell for n=" + std::to_string(n) + ", u=" + u.str() +
              ", cell (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
}

double coverage(const std::vector<ConfidenceInterval>& intervals, double true_value) {
  if (intervals.empty()) throw EmptyListError("coverage of an empty interval list");
  std::size_t hits = 0;
  for (const ConfidenceInterval& ci : intervals) {
    if (ci.contains(true_value)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(intervals.size());
}

const std::map<std::string, TransitionMatrix>& builtin_matrices() {
  static const std::map<std::string, TransitionMatrix> matrices = {
      {"P_I", TransitionMatrix({{0.4, 0.3, 0.3}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4}})},
      {"P_II",
       TransitionMatrix({{0.1, 0.45, 0.45}, {0.45, 0.1, 0.45}, {0.45, 0.45, 0.1}})},
      {"Eq8", TransitionMatrix({{0.25, 0.25, 0.25, 0.25},
                                {0.10, 0.20, 0.20, 0.50},
                                {0.05, 0.10, 0.10, 0.75},
                                {0.10, 0.20, 0.30, 0.40}})},
  };
  return matrices;
}

namespace {

void validate(const StudyConfig& cfg) {
  if (cfg.n_grid.empty() || cfg.u_grid.empty()) {
    throw ParameterOutOfRangeError("study grids must be nonempty");
  }
  for (int n : cfg.n_grid) {
    if (n < 2) throw ParameterOutOfRangeError("chain lengths must be at least 2");
  }
  if (cfg.R < 1) throw ParameterOutOfRangeError("replication count must be positive");
  if (cfg.B < 2) throw ParameterOutOfRangeError("need at least 2 resamples");
  if (!(cfg.nominal > 0.0 && cfg.nominal < 1.0)) {
    throw ParameterOutOfRangeError("nominal level must lie in (0, 1)");
  }
  if (cfg.tracked_cells.empty()) {
    throw ParameterOutOfRangeError("no tracked cells");
  }
  const int d = cfg.truth.dim();
  for (const auto& [i, j] : cfg.tracked_cells) {
    if (i < 0 || i >= d || j < 0 || j >= d) {
      throw ParameterOutOfRangeError("tracked cell (" + std::to_string(i + 1) + ", " +
                                     std::to_string(j + 1) + ") outside the matrix");
    }
  }
}

}  // namespace

CoverageReport run_study(const StudyConfig& cfg, int workers) {
  validate(cfg);
  const double alpha = (1.0 - cfg.nominal) / 2.0;
  const Distribution initial = Distribution::uniform(cfg.truth.dim());
  const std::size_t n_arms = cfg.n_grid.size() * cfg.u_grid.size();
  const std::size_t slots = n_arms * cfg.tracked_cells.size();

  // One covered flag and one width per (replication, n, u, cell); the serial
  // reduction below runs in replication order, so worker count cannot change
  // the report.
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(cfg.R) * slots, 0);
  std::vector<double> widths(static_cast<std::size_t>(cfg.R) * slots, 0.0);

  const int count = cfg.R;
  workers = std::max(1, std::min(workers, count));
  std::atomic<int> next{0};
  auto run_replication = [&](int r) {
    const SeedSpec rep_seed = cfg.seed.derive(static_cast<std::uint64_t>(r) + 1);
    std::size_t slot = static_cast<std::size_t>(r) * slots;
    for (const int n : cfg.n_grid) {
      // The chain and the bootstrap streams are shared by every u-arm, so
      // arm differences come from the generator matrix alone.  Keying them
      // by the value of n (not its grid position) makes each (r, n) arm
      // independent of what else is in the grid.
      const SeedSpec chain_seed = rep_seed.derive(2 * static_cast<std::uint64_t>(n));
      const SeedSpec boot_seed = rep_seed.derive(2 * static_cast<std::uint64_t>(n) + 1);
      const StateSequence chain = generate_chain(cfg.truth, initial, n, chain_seed);
      const TransitionMatrix p_hat = mle_estimate(chain);
      for (const SmoothingParam& u : cfg.u_grid) {
        const TransitionMatrix generator = smooth(p_hat, n, u);
        const BootstrapBatch batch =
            run_bootstrap({cfg.B, n, generator, initial, boot_seed}, 1);
        for (const auto& [i, j] : cfg.tracked_cells) {
          const ConfidenceInterval ci = percentile_ci(batch.cell_values(i, j), alpha);
          covered[slot] = ci.contains(cfg.truth(i, j)) ? 1 : 0;
          widths[slot] = ci.width();
          ++slot;
        }
      }
    }
  };
  auto drain = [&] {
    for (int r = next.fetch_add(1); r < count; r = next.fetch_add(1)) run_replication(r);
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();

  CoverageReport report{cfg.truth_name, cfg.nominal, {}};
  report.cells.reserve(slots);
  std::size_t arm = 0;
  for (int n : cfg.n_grid) {
    for (const SmoothingParam& u : cfg.u_grid) {
      for (const auto& [i, j] : cfg.tracked_cells) {
        std::int64_t hits = 0;
        double width_sum = 0.0;
        for (int r = 0; r < cfg.R; ++r) {
          const std::size_t slot = static_cast<std::size_t>(r) * slots + arm;
          hits += covered[slot];
          width_sum += widths[slot];
        }
        report.cells.push_back(CoverageCell{
            n, u, i, j, static_cast<double>(hits) / cfg.R, width_sum / cfg.R, cfg.R});
        ++arm;
      }
    }
  }
  return report;
}

}  // namespace markov
