#include <vector>

#include "doctest.h"
#include "markov/chain.hpp"
#include "markov/study.hpp"

using namespace markov;

namespace {

// Small enough to run in milliseconds while still exercising every arm.
StudyConfig small_config() {
  return StudyConfig{.truth = builtin_matrices().at("P_II"),
                     .truth_name = "P_II",
                     .n_grid = {25, 50},
                     .u_grid = {SmoothingParam(0.5), SmoothingParam::infinite()},
                     .B = 100,
                     .R = 20,
                     .nominal = 0.90,
                     .tracked_cells = {{0, 0}, {0, 1}},
                     .seed = {7, 0}};
}

bool same_cell(const CoverageCell& a, const CoverageCell& b) {
  return a.n == b.n && a.u == b.u && a.i == b.i && a.j == b.j &&
         a.coverage == b.coverage && a.mean_width == b.mean_width &&
         a.replications == b.replications;
}

}  // namespace

TEST_CASE("coverage counts containing intervals") {
  const std::vector<ConfidenceInterval> all{{0.0, 1.0, 0.05}, {0.0, 1.0, 0.05}};
  CHECK(coverage(all, 0.4) == 1.0);
  const std::vector<ConfidenceInterval> none{{0.0, 0.3, 0.05}, {0.5, 0.9, 0.05}};
  CHECK(coverage(none, 0.4) == 0.0);
  std::vector<ConfidenceInterval> mixed(9, ConfidenceInterval{0.0, 1.0, 0.05});
  mixed.push_back({0.7, 0.9, 0.05});
  CHECK(coverage(mixed, 0.4) == doctest::Approx(0.9));
  // Endpoints are closed.
  CHECK(coverage({{0.4, 0.6, 0.05}}, 0.4) == 1.0);
  CHECK_THROWS_AS(coverage({}, 0.4), EmptyListError);
}

TEST_CASE("builtin matrices match their definitions") {
  const auto& mats = builtin_matrices();
  const TransitionMatrix& p1 = mats.at("P_I");
  CHECK(p1.dim() == 3);
  CHECK(p1(0, 0) == doctest::Approx(0.4));
  CHECK(p1(0, 1) == doctest::Approx(0.3));
  const TransitionMatrix& p2 = mats.at("P_II");
  CHECK(p2.dim() == 3);
  for (int i = 0; i < 3; ++i) CHECK(p2(i, i) == doctest::Approx(0.1));
  CHECK(p2(0, 1) == doctest::Approx(0.45));
  const TransitionMatrix& eq8 = mats.at("Eq8");
  CHECK(eq8.dim() == 4);
  CHECK(eq8(2, 3) == doctest::Approx(0.75));
}

TEST_CASE("the symmetric builtins have the uniform steady state") {
  for (const char* name : {"P_I", "P_II"}) {
    const auto pi = steady_state(builtin_matrices().at(name));
    REQUIRE(pi.has_value());
    for (int i = 0; i < 3; ++i) CHECK((*pi)[i] == doctest::Approx(1.0 / 3).epsilon(1e-9));
  }
}

TEST_CASE("a degenerate truth gives point intervals and full coverage") {
  StudyConfig cfg = small_config();
  cfg.truth = TransitionMatrix::identity(2);
  cfg.truth_name = "identity";
  cfg.n_grid = {10};
  cfg.u_grid = {SmoothingParam::infinite()};
  cfg.tracked_cells = {{0, 0}};
  const CoverageReport report = run_study(cfg);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].coverage == 1.0);
  CHECK(report.cells[0].mean_width == 0.0);
  CHECK(report.cells[0].replications == cfg.R);
}

TEST_CASE("report cells are ordered n-major, then u, then cell") {
  const CoverageReport report = run_study(small_config());
  REQUIRE(report.cells.size() == 8);
  CHECK(report.cells[0].n == 25);
  CHECK(report.cells[0].u == SmoothingParam(0.5));
  CHECK(report.cells[0].i == 0);
  CHECK(report.cells[0].j == 0);
  CHECK(report.cells[1].j == 1);
  CHECK(report.cells[2].u == SmoothingParam::infinite());
  CHECK(report.cells[4].n == 50);
  for (const CoverageCell& cell : report.cells) {
    CHECK(cell.coverage >= 0.0);
    CHECK(cell.coverage <= 1.0);
    CHECK(cell.mean_width >= 0.0);
    CHECK(cell.mean_width <= 1.0);
    CHECK(cell.replications == 20);
  }
}

TEST_CASE("find locates a cell and rejects absent arms") {
  const CoverageReport report = run_study(small_config());
  const CoverageCell& cell = report.find(50, SmoothingParam::infinite(), 0, 1);
  CHECK(cell.n == 50);
  CHECK(cell.j == 1);
  CHECK_THROWS_AS(report.find(75, SmoothingParam(0.5), 0, 0), Error);
}

TEST_CASE("arms do not depend on what else is in the grid") {
  const StudyConfig full = small_config();
  const CoverageReport both = run_study(full);

  StudyConfig only_half = full;
  only_half.u_grid = {SmoothingParam(0.5)};
  const CoverageReport half = run_study(only_half);
  for (int j : {0, 1}) {
    CHECK(same_cell(half.find(25, SmoothingParam(0.5), 0, j),
                    both.find(25, SmoothingParam(0.5), 0, j)));
    CHECK(same_cell(half.find(50, SmoothingParam(0.5), 0, j),
                    both.find(50, SmoothingParam(0.5), 0, j)));
  }

  StudyConfig only_50 = full;
  only_50.n_grid = {50};
  const CoverageReport fifty = run_study(only_50);
  for (const SmoothingParam& u : full.u_grid) {
    for (int j : {0, 1}) {
      CHECK(same_cell(fifty.find(50, u, 0, j), both.find(50, u, 0, j)));
    }
  }
}

TEST_CASE("run_study is identical at any worker count") {
  const StudyConfig cfg = small_config();
  const CoverageReport serial = run_study(cfg, 1);
  const CoverageReport parallel = run_study(cfg, 4);
  REQUIRE(serial.cells.size() == parallel.cells.size());
  for (std::size_t k = 0; k < serial.cells.size(); ++k) {
    CHECK(same_cell(serial.cells[k], parallel.cells[k]));
  }
}

TEST_CASE("stronger smoothing narrows intervals and lowers coverage at full scale") {
  // Full-scale arms (B = 5000, R = 1000) of the bundled seed-5 preset,
  // restricted to the n = 25 finite-u cells.  A few seconds at 4 workers.
  const StudyConfig cfg{builtin_matrices().at("P_I"),
                        "P_I",
                        {25},
                        {SmoothingParam(0.5), SmoothingParam(1.0), SmoothingParam(2.0)},
                        5000,
                        1000,
                        0.90,
                        {{0, 0}},
                        {5, 0}};
  const CoverageReport report = run_study(cfg, 4);
  const CoverageCell& half = report.find(25, SmoothingParam(0.5), 0, 0);
  const CoverageCell& one = report.find(25, SmoothingParam(1.0), 0, 0);
  const CoverageCell& two = report.find(25, SmoothingParam(2.0), 0, 0);
  CHECK(half.coverage > one.coverage);
  CHECK(one.coverage > two.coverage);
  CHECK(half.mean_width > one.mean_width);
  CHECK(one.mean_width > two.mean_width);
}

TEST_CASE("run_study validates its configuration") {
  StudyConfig cfg = small_config();
  cfg.n_grid.clear();
  CHECK_THROWS_AS(run_study(cfg), ParameterOutOfRangeError);
  cfg = small_config();
  cfg.n_grid = {1};
  CHECK_THROWS_AS(run_study(cfg), ParameterOutOfRangeError);
  cfg = small_config();
  cfg.R = 0;
  CHECK_THROWS_AS(run_study(cfg), ParameterOutOfRangeError);
  cfg = small_config();
  cfg.B = 1;
  CHECK_THROWS_AS(run_study(cfg), ParameterOutOfRangeError);
  cfg = small_config();
  cfg.nominal = 1.0;
  CHECK_THROWS_AS(run_study(cfg), ParameterOutOfRangeError);
  cfg = small_config();
  cfg.tracked_cells = {{0, 3}};
  CHECK_THROWS_AS(run_study(cfg), ParameterOutOfRangeError);
}
