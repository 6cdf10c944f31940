#include "markov/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <utility>

#include "markov/chain.hpp"

namespace markov {

std::vector<double> BootstrapBatch::cell_values(int i, int j) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(B));
  for (int k = 0; k < B; ++k) out.push_back(estimate_at(k, i, j));
  return out;
}

namespace {

// Runs tasks 0..count-1 on up to `workers` threads.  Each task writes only
// its own output slot, so the schedule cannot affect the result.
template <typename Task>
void parallel_for(int count, int workers, const Task& task) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<int> next{0};
  auto drain = [&] {
    for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) task(k);
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

}  // namespace

BootstrapBatch run_bootstrap(const BootstrapConfig& cfg, int workers) {
  if (cfg.B < 2) {
    throw ParameterOutOfRangeError(
        "need at least 2 resamples; covariance is undefined for B = " +
        std::to_string(cfg.B));
  }
  if (cfg.n < 2) {
    throw SequenceTooShortError("resamples of length " + std::to_string(cfg.n) +
                                " cannot be estimated");
  }
  const int d = cfg.generator.dim();
  const Distribution initial = cfg.initial ? *cfg.initial : Distribution::uniform(d);
  if (initial.dim() != d) {
    throw DimensionMismatchError("initial distribution dimension does not match generator");
  }

  const int dd = d * d;
  BootstrapBatch batch{d, cfg.B,
                       std::vector<double>(static_cast<std::size_t>(cfg.B) * dd, 0.0),
                       std::vector<double>(static_cast<std::size_t>(dd), 0.0),
                       std::vector<double>(static_cast<std::size_t>(dd) * dd, 0.0)};

  // Resample k (1-based) draws from the child stream keyed by k, so the
  // rows of `estimates` depend only on (cfg, k), never on thread timing.
  parallel_for(cfg.B, workers, [&](int task) {
    const StateSequence chain = generate_chain(
        cfg.generator, initial, cfg.n, cfg.seed.derive(static_cast<std::uint64_t>(task) + 1));
    const VectorizedMatrix v = vectorize(mle_estimate(chain));
    std::copy(v.values.begin(), v.values.end(),
              batch.estimates.begin() + static_cast<std::size_t>(task) * dd);
  });

  for (int k = 0; k < cfg.B; ++k) {
    const double* row = batch.estimates.data() + static_cast<std::size_t>(k) * dd;
    for (int c = 0; c < dd; ++c) batch.mean[static_cast<std::size_t>(c)] += row[c];
  }
  for (int c = 0; c < dd; ++c) batch.mean[static_cast<std::size_t>(c)] /= cfg.B;

  for (int k = 0; k < cfg.B; ++k) {
    const double* row = batch.estimates.data() + static_cast<std::size_t>(k) * dd;
    for (int r = 0; r < dd; ++r) {
      const double dr = row[r] - batch.mean[static_cast<std::size_t>(r)];
      for (int c = r; c < dd; ++c) {
        batch.covariance[static_cast<std::size_t>(r) * dd + c] +=
            dr * (row[c] - batch.mean[static_cast<std::size_t>(c)]);
      }
    }
  }
  for (int r = 0; r < dd; ++r) {
    for (int c = r; c < dd; ++c) {
      const double v = batch.covariance[static_cast<std::size_t>(r) * dd + c] / (cfg.B - 1);
      batch.covariance[static_cast<std::size_t>(r) * dd + c] = v;
      batch.covariance[static_cast<std::size_t>(c) * dd + r] = v;
    }
  }
  return batch;
}

EmpiricalCDF::EmpiricalCDF(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw EmptySampleError("empirical CDF needs at least one value");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const noexcept {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCDF empirical_cdf(std::vector<double> values) {
  return EmpiricalCDF(std::move(values));
}

ConfidenceInterval percentile_ci(const std::vector<double>& values, double alpha) {
  if (values.empty()) throw EmptySampleError("percentile interval needs at least one value");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw AlphaOutOfRangeError("per-tail level must lie in (0, 0.5)");
  }
  std::vector<double> v(values);
  std::sort(v.begin(), v.end());
  const std::size_t N = v.size();

  ConfidenceInterval ci{v.front(), v.back(), alpha};
  // Walk the distinct values upward; F jumps to (last duplicate index + 1)/N
  // at each.  F only grows, so the last value with F <= alpha is x_L and the
  // first with F >= 1 - alpha is x_U.
  for (std::size_t k = 0; k < N;) {
    std::size_t e = k;
    while (e + 1 < N && v[e + 1] == v[k]) ++e;
    const double F = static_cast<double>(e + 1) / static_cast<double>(N);
    if (F <= alpha) ci.lower = v[k];
    if (F >= 1.0 - alpha) {
      ci.upper = v[k];
      break;
    }
    k = e + 1;
  }
  return ci;
}

std::vector<ConfidenceInterval> element_cis(const BootstrapBatch& batch, double alpha) {
  std::vector<ConfidenceInterval> cis;
  cis.reserve(static_cast<std::size_t>(batch.d) * batch.d);
  for (int i = 0; i < batch.d; ++i) {
    for (int j = 0; j < batch.d; ++j) {
      cis.push_back(percentile_ci(batch.cell_values(i, j), alpha));
    }
  }
  return cis;
}

}  // namespace markov
