#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/imethod.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/solver.hpp"

using namespace nlslab;
using test::rel_diff;

TEST_SUITE("i_method") {

TEST_CASE("multiplier values") {
  CHECK(m_symbol(0.0, 8.0, 0.5) == 1.0);
  CHECK(m_symbol(4.0, 8.0, 0.5) == 1.0);
  CHECK(m_symbol(8.0, 8.0, 0.5) == 1.0);
  CHECK(m_symbol(32.0, 8.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m_symbol(-32.0, 8.0, 0.5) == m_symbol(32.0, 8.0, 0.5));
  CHECK(m_symbol(16.0, 8.0, 0.3) == doctest::Approx(std::pow(2.0, -0.7)));
  CHECK_THROWS_AS(IMultiplier(1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(IMultiplier(8.0, 1.0), ConfigError);
  CHECK_THROWS_AS(IMultiplier(8.0, 0.0), ConfigError);
}

TEST_CASE("multiplier shape") {
  const double N = 10.0;
  for (double s : {0.05, 0.2, 0.5, 0.7, 0.95}) {
    CAPTURE(s);
    double prev_m = 1.0, prev_xm = 0.0;
    double max_jump = 0.0;
    const double h = 1e-4;
    for (double xi = 0.0; xi <= 4.0 * N; xi += h * N) {
      const double m = m_symbol(xi, N, s);
      CHECK(m <= prev_m + 1e-15);
      CHECK(xi * m >= prev_xm - 1e-12);
      max_jump = std::max(max_jump, std::abs(m - prev_m));
      prev_m = m;
      prev_xm = xi * m;
    }
    // Continuity: no jump larger than the Lipschitz bound over one step.
    CHECK(max_jump < 10.0 * h);
    // C^1 at the joints: one-sided slopes agree.
    for (double joint : {N, 2.0 * N}) {
      const double e = 1e-6 * N;
      const double left = (m_symbol(joint, N, s) - m_symbol(joint - e, N, s)) / e;
      const double right = (m_symbol(joint + e, N, s) - m_symbol(joint, N, s)) / e;
      CHECK(std::abs(left - right) < 1e-4);
    }
  }
}

TEST_CASE("apply_I") {
  const Grid1D g(2.0 * std::numbers::pi, 256);
  const IMultiplier im(8.0, 0.5);
  const auto low = test::plane_wave(g, 3, 0.7).combine(1.0, test::plane_wave(g, -8), 0.2);
  CHECK(max_abs_difference(apply_I(low, im), low) < 1e-14);
  const auto high = test::plane_wave(g, 32);
  CHECK(max_abs_difference(apply_I(high, im), high.scaled(0.5)) < 1e-14);

  const auto u = test::gaussian(Grid1D(20.0, 512), 1.0, 0.0, 3.0);
  const IMultiplier im2(2.0, 0.6);
  const auto a = free_propagate(apply_I(u, im2), 0.3);
  const auto b = apply_I(free_propagate(u, 0.3), im2);
  CHECK(max_abs_difference(a, b) < 1e-13);
}

TEST_CASE("property audit") {
  const Grid1D g(40.0, 1024);
  const auto u = test::gaussian(g, 1.0, 0.0, 5.0);
  for (double N : {2.0, 4.0, 8.0}) {
    const auto rep = i_property_audit(u, IMultiplier(N, 0.5), 0.25);
    REQUIRE(rep.i1);
    CHECK(*rep.i1 <= 1.0);
    REQUIRE(rep.i3_lower);
    REQUIRE(rep.i3_upper);
    CHECK(*rep.i3_lower <= 1.0 + 1e-12);  // m <= 1 and <xi>^{1-s} m >= 1
    CHECK(*rep.i3_upper <= 2.0);
  }
  // Band-limited data below N: I is the identity and the high-frequency ratio is absent.
  const Grid1D p(2.0 * std::numbers::pi, 128);
  const auto rep = i_property_audit(test::plane_wave(p, 3), IMultiplier(8.0, 0.5), 0.25);
  CHECK(*rep.i1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(rep.i2);
  CHECK(i_property_audit(ComplexField::zeros(p), IMultiplier(8.0, 0.5), 0.25).i1 == std::nullopt);
  CHECK_THROWS_AS((void)i_property_audit(u, IMultiplier(8.0, 0.5), 0.6), ConfigError);
}

TEST_CASE("modified energy") {
  const Grid1D p(2.0 * std::numbers::pi, 128);
  const auto low = test::plane_wave(p, 2, 0.5).combine(1.0, test::plane_wave(p, -5), 0.3);
  CHECK(rel_diff(modified_energy(low, IMultiplier(8.0, 0.5), 3.0), energy(low, 3.0)) < 1e-13);

  const auto u = test::gaussian(Grid1D(20.0, 512), 1.0, 0.0, 4.0);
  const auto u2 = test::gaussian(Grid1D(20.0, 1024), 1.0, 0.0, 4.0);
  const IMultiplier im(2.0, 0.7);
  const double e = modified_energy(u, im, 3.0);
  CHECK(e < energy(u, 3.0));
  CHECK(rel_diff(e, modified_energy(u2, im, 3.0)) < 1e-6);
  const auto hook = modified_energy_hook(im, 3.0);
  CHECK(hook(u) == e);
}

TEST_CASE("rescale") {
  const Grid1D g(20.0, 256);
  const auto u = test::gaussian(g, 1.0, 0.0, 1.0).with_time(0.25);
  const auto same = rescale(u, {1.0, 3.0});
  CHECK(same.grid().size() == 256);
  CHECK(max_abs_difference(same, u) < 1e-14);

  for (double lambda : {2.0, 3.0, 8.0}) {
    CAPTURE(lambda);
    const auto v = rescale(u, {lambda, 3.0});
    CHECK(v.grid().length() == doctest::Approx(lambda * 20.0));
    CHECK(v.grid().dx() <= g.dx() + 1e-15);
    CHECK(v.time() == doctest::Approx(0.25 * lambda * lambda));
    CHECK(rel_diff(mass(v), std::pow(lambda, 1.0 - 2.0 / 3.0) * mass(u)) < 1e-12);
    const double sc = critical_regularity(3.0);
    CHECK(rel_diff(sobolev_norm(v, sc, Homogeneity::homogeneous),
                   sobolev_norm(u, sc, Homogeneity::homogeneous)) < 1e-10);
  }
  CHECK(rescale(u, {3.0, 3.0}).grid().size() == 1024);
  CHECK_THROWS_AS((void)rescale(u, {0.5, 3.0}), ConfigError);
  CHECK_THROWS_AS((void)rescale(u, {4096.0, 3.0, 1u << 16}), NumericalError);
}

TEST_CASE("rescaling parameter") {
  const double lam = lambda_for_small_energy(2.0, 64.0, 0.7, 3.0, 0.1);
  const auto c = lambda_constraints(lam, 2.0, 64.0, 0.7, 3.0);
  CHECK(c.energy_term <= 0.1);
  CHECK(c.potential_term <= 0.1);
  REQUIRE(lam > 1.0);
  const auto half = lambda_constraints(lam / 2.0, 2.0, 64.0, 0.7, 3.0);
  CHECK((half.energy_term > 0.1 || half.potential_term > 0.1));
  CHECK(std::log2(lam) == doctest::Approx(std::round(std::log2(lam))));

  double prev = 1.0;
  for (double N : {4.0, 16.0, 64.0, 256.0}) {
    const double l = lambda_for_small_energy(2.0, N, 0.7, 3.0, 0.1);
    CHECK(l >= prev);
    prev = l;
  }
  CHECK(lambda_for_small_energy(1e-3, 2.0, 0.7, 3.0, 0.1) == 1.0);
  CHECK_THROWS_AS((void)lambda_for_small_energy(2.0, 64.0, 1.0 / 6.0, 3.0), ConfigError);
  CHECK_THROWS_AS((void)lambda_for_small_energy(2.0, 64.0, 0.2, 3.0, 0.0), ConfigError);
}

TEST_CASE("increment sweep bookkeeping") {
  const Grid1D g(20.0, 256);
  const auto u0 = test::gaussian(g, 0.5);
  const auto cfg = SolverConfig::with_degree(3, 1e-3, 0.02, 0.005);
  SweepOptions opts;
  opts.energy_target = 0.5;
  const auto sw = increment_sweep(u0, {2.0, 4.0, 8.0}, cfg, opts);
  REQUIRE(sw.points.size() == 3);
  for (const auto& p : sw.points) {
    CHECK(p.lambda >= 1.0);
    CHECK(p.e0 <= opts.energy_target);
    CHECK(p.sup_e >= p.e0);
    CHECK(p.increment >= 0.0);
    CHECK(p.noise_floor >= 0.0);
  }
  CHECK(sw.fitted <= 3);
  CHECK_THROWS_AS((void)increment_sweep(u0, {}, cfg, opts), ConfigError);
}

}  // TEST_SUITE
