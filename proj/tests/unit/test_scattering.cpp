#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nlslab/error.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/scattering.hpp"
#include "nlslab/solver.hpp"

using namespace nlslab;
using test::rel_diff;

namespace {

Trajectory run(const ComplexField& u0, bool nonlinear, double T = 1.0) {
  auto cfg = SolverConfig::with_degree(3, 1e-3, T, 0.25);
  cfg.nonlinear = nonlinear;
  DiagnosticsRequest req;
  req.snapshots = SnapshotPolicy::all;
  return evolve(u0, cfg, req);
}

}  // namespace

TEST_SUITE("scattering_lab") {

TEST_CASE("pullback") {
  const Grid1D g(40.0, 512);
  const auto u = test::gaussian(g, 1.0, 0.0, 2.0);
  CHECK(max_abs_difference(pullback(u), u) == 0.0);
  const auto later = free_propagate(u, 0.7);
  const auto back = pullback(later);
  CHECK(back.time() == doctest::Approx(0.7));
  CHECK(max_abs_difference(back.with_time(0.0), u) < 1e-13);
  CHECK(rel_diff(lebesgue_norm(back, 2.0), lebesgue_norm(later, 2.0)) < 1e-13);
}

TEST_CASE("free flow has a constant scattering state") {
  const Grid1D g(40.0, 512);
  const auto tr = run(test::gaussian(g, 1.0, 0.0, 1.0), false);
  const auto rep = scattering_state(tr, 1.0, 1);
  const std::size_t m = rep.times.size();
  REQUIRE(m == tr.snapshots.size());
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(rep.distance_matrix[i][i] == 0.0);
    for (std::size_t j = 0; j < m; ++j) CHECK(rep.distance_matrix[i][j] < 1e-12);
  }
  CHECK(rep.decay_ratio == 0.0);
  for (double r : rep.residuals) CHECK(r < 1e-12);
  CHECK(rep.residuals.back() == doctest::Approx(0.0));
  REQUIRE(rep.u_plus);
  CHECK(rep.u_plus->time() == 0.0);
}

TEST_CASE("distance matrix is a metric") {
  const Grid1D g(40.0, 512);
  const auto rep = cauchy_audit(run(test::boosted_pair(g, 1.0), true), 1.0, 1);
  const auto& d = rep.distance_matrix;
  const std::size_t m = d.size();
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(d[i][i] == 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(d[i][j] == doctest::Approx(d[j][i]));
      for (std::size_t k = 0; k < m; ++k) CHECK(d[i][k] <= d[i][j] + d[j][k] + 1e-12);
    }
  }
  CHECK(d[0][m - 1] > 0.0);
  // Threading does not change the result.
  const auto rep2 = cauchy_audit(run(test::boosted_pair(g, 1.0), true), 1.0, 3);
  CHECK(rep2.distance_matrix == d);
}

TEST_CASE("gauge covariance") {
  const Grid1D g(40.0, 512);
  const auto u = test::gaussian(g, 1.2, 0.0, 1.0);
  const auto a = scattering_state(run(u, true), 1.0, 1);
  const auto b = scattering_state(run(u.scaled(std::polar(1.0, 0.8)), true), 1.0, 1);
  for (std::size_t i = 0; i < a.residuals.size(); ++i) {
    CHECK(std::abs(a.residuals[i] - b.residuals[i]) < 1e-10);
  }
  CHECK(max_abs_difference(a.u_plus->scaled(std::polar(1.0, 0.8)), *b.u_plus) < 1e-10);
}

TEST_CASE("too few snapshots") {
  const Grid1D g(40.0, 256);
  auto cfg = SolverConfig::with_degree(3, 1e-3, 0.5, 0.25);
  const auto tr = evolve(test::gaussian(g), cfg);
  CHECK_THROWS_AS((void)cauchy_audit(tr), ConfigError);
}

TEST_CASE("schedule") {
  const auto t = scattering_schedule(8.0, 3, 3);
  REQUIRE(t.size() == 7);
  CHECK(t[0] == 1.0);
  CHECK(t[1] == 2.0);
  CHECK(t[2] == 4.0);
  CHECK(t.back() == 8.0);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
  CHECK_THROWS_AS((void)scattering_schedule(8.0, 2, 0), ConfigError);
  CHECK_THROWS_AS((void)scattering_schedule(0.0, 3, 0), ConfigError);
}

TEST_CASE("global L8 budget") {
  const Grid1D g(40.0, 512);
  auto cfg = SolverConfig::with_degree(3, 1e-3, 0.5, 0.05);
  const auto zero = global_l8_budget(evolve(ComplexField::zeros(g), cfg));
  CHECK(zero.l8_norm == 0.0);
  CHECK(zero.h1_ratio == 0.0);
  CHECK(zero.morawetz_ratio == 0.0);

  const auto tr = evolve(test::gaussian(g), cfg);
  const auto b = global_l8_budget(tr);
  CHECK(b.l8_norm > 0.0);
  CHECK(rel_diff(std::pow(b.morawetz_ratio, 8.0), integrated_audit(tr)) < 1e-12);
  CHECK_THROWS_AS((void)global_l8_budget(Trajectory{}), ConfigError);
}

}  // TEST_SUITE
