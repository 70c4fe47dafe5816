#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "nlslab/error.hpp"
#include "nlslab/imethod.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/solver.hpp"

using namespace nlslab;
using test::rel_diff;

namespace {

MorawetzConfig small_cfg(std::size_t n_sub = 24) {
  MorawetzConfig c;
  c.n_sub = n_sub;
  c.threads = 1;
  return c;
}

Trajectory synthetic(double slope, std::size_t n = 11) {
  Trajectory tr;
  for (std::size_t i = 0; i < n; ++i) {
    DiagnosticsRecord r;
    r.t = 0.1 * static_cast<double>(i);
    r.l8_density = 1.0;
    r.morawetz_action = slope * r.t;
    tr.records.push_back(r);
  }
  return tr;
}

}  // namespace

TEST_SUITE("interaction_morawetz") {

TEST_CASE("rotation is orthogonal") {
  for (std::size_t i = 0; i < 4; ++i) {
    Vec4 e{};
    e[i] = 1.0;
    const auto back = RotationMatrix::apply_transpose(RotationMatrix::apply(e));
    for (std::size_t j = 0; j < 4; ++j) CHECK(back[j] == doctest::Approx(i == j ? 1.0 : 0.0));
  }
  // The centre-of-mass row sees only the sum of coordinates.
  const auto z = RotationMatrix::apply({1.0, 1.0, 1.0, 1.0});
  CHECK(z[0] == doctest::Approx(2.0));
  CHECK(std::abs(z[1]) + std::abs(z[2]) + std::abs(z[3]) < 1e-15);
}

TEST_CASE("weight gradient") {
  const auto g = weight_gradient({5.0, 3.0, 0.0, 4.0});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(0.6));
  CHECK(g[2] == 0.0);
  CHECK(g[3] == doctest::Approx(0.8));
  const auto d = weight_gradient({7.0, 0.0, 0.0, 0.0});
  for (double v : d) CHECK(v == 0.0);
}

TEST_CASE("config budget") {
  auto c = small_cfg(1024);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.n_sub = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.n_sub = 32;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("action vanishes for real and zero data") {
  const Grid1D g(40.0, 512);
  CHECK(interaction_action(ComplexField::zeros(g), small_cfg()) == 0.0);
  CHECK(action_bound_ratio(ComplexField::zeros(g), small_cfg()) == 0.0);
  CHECK(std::abs(interaction_action(test::gaussian(g), small_cfg())) < 1e-12);
}

TEST_CASE("symmetries of the action") {
  const Grid1D g(40.0, 512);
  const auto u = test::boosted_pair(g, 2.0);
  const auto cfg = small_cfg(32);
  const double m = interaction_action(u, cfg);
  CHECK(std::abs(m) > 1e-3);
  // Degree-8 homogeneity.
  const cplx c{0.6, -0.9};
  CHECK(rel_diff(interaction_action(u.scaled(c), cfg), std::pow(std::abs(c), 8.0) * m) < 1e-10);
  // Conjugation reverses time.
  CHECK(rel_diff(interaction_action(u.conjugated(), cfg), -m) < 1e-10);
  // Translation by whole grid cells.
  const double shift = 16 * g.dx();
  const auto moved = ComplexField::from_function(g, [&](double x) {
    const double l = x - shift + 3.0, r = x - shift - 3.0;
    return std::exp(-l * l) * std::polar(1.0, 2.0 * x) + std::exp(-r * r) * std::polar(1.0, -2.0 * x);
  });
  CHECK(rel_diff(interaction_action(moved, cfg), m) < 1e-8);
}

TEST_CASE("quadrature refinement") {
  const Grid1D g(40.0, 512);
  const auto u = test::boosted_pair(g, 2.0);
  const double coarse = interaction_action(u, small_cfg(32));
  const double fine = interaction_action(u, small_cfg(48));
  CHECK(rel_diff(coarse, fine) < 1e-3);
  CHECK(action_quadrature_error(u, small_cfg(48)) >= 0.0);
}

TEST_CASE("action bound ratio stays below one") {
  const Grid1D g(40.0, 512);
  const double r = action_bound_ratio(test::boosted_pair(g, 2.0), small_cfg(32));
  CHECK(r > 0.0);
  CHECK(r <= 1.0);
}

TEST_CASE("free flow increases the action") {
  const Grid1D g(40.0, 512);
  auto cfg = SolverConfig::with_degree(3, 1e-3, 0.3, 0.1);
  cfg.nonlinear = false;
  DiagnosticsRequest req;
  req.morawetz_action = action_hook(small_cfg(40));
  const auto tr = evolve(test::boosted_pair(g, 2.0), cfg, req);
  for (std::size_t i = 1; i < tr.records.size(); ++i) {
    CHECK(*tr.records[i].morawetz_action >= *tr.records[i - 1].morawetz_action - 1e-9);
  }
}

TEST_CASE("monotonicity audit on synthetic samples") {
  const auto ok = monotonicity_audit(synthetic(kMorawetzConstant + 1.0));
  CHECK(ok.passed());
  CHECK(ok.min_defect == doctest::Approx(1.0));
  REQUIRE(ok.empirical_constant);
  CHECK(*ok.empirical_constant == doctest::Approx(kMorawetzConstant + 1.0));
  CHECK(ok.action_increment == doctest::Approx((kMorawetzConstant + 1.0) * 1.0));
  CHECK(ok.integrated_bound == doctest::Approx(kMorawetzConstant));

  const auto bad = monotonicity_audit(synthetic(0.5 * kMorawetzConstant));
  CHECK_FALSE(bad.pointwise_passed());
  CHECK_FALSE(bad.integrated_passed());

  CHECK_THROWS_AS((void)monotonicity_audit(synthetic(1.0, 2)), ConfigError);
  auto missing = synthetic(1.0);
  missing.records[3].morawetz_action.reset();
  CHECK_THROWS_AS((void)monotonicity_audit(missing), ConfigError);
}

TEST_CASE("integrated audit is scale invariant") {
  const Grid1D g(40.0, 1024);
  const auto u0 = test::gaussian(g);
  const auto cfg = SolverConfig::with_degree(3, 1e-3, 0.5, 0.01);
  const double base = integrated_audit(evolve(u0, cfg));
  CHECK(base > 0.0);
  RescaleParams rp;
  rp.lambda = 2.0;
  rp.exponent = 3.0;
  const auto cfg2 = SolverConfig::with_degree(3, 4e-3, 2.0, 0.04);
  const double scaled = integrated_audit(evolve(rescale(u0, rp), cfg2));
  CHECK(rel_diff(scaled, base) < 1e-9);
  CHECK(integrated_audit(Trajectory{}) == 0.0);
}

}  // TEST_SUITE
