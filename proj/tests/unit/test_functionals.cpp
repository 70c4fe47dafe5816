#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "helpers.hpp"
#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/solver.hpp"

using namespace nlslab;
using test::rel_diff;

namespace {

Trajectory constant_run(double c, double T, double stride) {
  const Grid1D g(16.0, 64);
  auto cfg = SolverConfig::with_degree(3, stride / 4, T, stride);
  cfg.nonlinear = false;
  return evolve(test::constant(g, c), cfg);
}

}  // namespace

TEST_SUITE("functionals") {

TEST_CASE("mass") {
  const Grid1D g(40.0, 1024);
  CHECK(mass(ComplexField::zeros(g)) == 0.0);
  CHECK(mass(test::constant(g, cplx{0.6, 0.8})) == doctest::Approx(40.0).epsilon(1e-14));
  CHECK(mass(test::gaussian(g)) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-13));
}

TEST_CASE("energy") {
  const Grid1D g(40.0, 1024);
  CHECK(energy(ComplexField::zeros(g), 3.0) == 0.0);
  const long m = 5;
  const double k1 = 2.0 * std::numbers::pi * m / g.length();
  const double A = 0.9;
  const auto parts = energy_parts(test::plane_wave(g, m, A), 3.0);
  CHECK(parts.kinetic == doctest::Approx(0.5 * A * A * k1 * k1 * g.length()).epsilon(1e-12));
  CHECK(parts.potential == doctest::Approx(std::pow(A, 8.0) * g.length() / 8.0).epsilon(1e-12));
  CHECK(parts.total() == doctest::Approx(parts.kinetic + parts.potential));
}

TEST_CASE("admissible pairs") {
  CHECK(is_admissible(kInfinity, 2.0));
  CHECK(is_admissible(6.0, 6.0));
  CHECK(is_admissible(8.0, 4.0));
  CHECK(is_admissible(4.0, kInfinity));
  CHECK_FALSE(is_admissible(4.0, 4.0));
  CHECK_FALSE(is_admissible(6.0, 1.5));
  CHECK_NOTHROW(AdmissiblePair(6.0, 6.0));
  CHECK_THROWS_AS(AdmissiblePair(4.0, 4.0), ConfigError);
}

TEST_CASE("slab accumulator") {
  SlabAccumulator acc(2.0, 2.0);
  acc.add(0.0, 1.0);
  acc.add(1.0, 1.0);
  CHECK(acc.value() == doctest::Approx(1.0));
  const double v1 = acc.value();
  acc.add(3.0, 2.0);
  CHECK(acc.value() >= v1);
  CHECK_THROWS_AS(acc.add(3.0, 1.0), ConfigError);

  SlabAccumulator sup(kInfinity, 8.0);
  sup.add(0.0, 1.0);
  sup.add(1.0, 3.0);
  sup.add(2.0, 2.0);
  CHECK(sup.value() == 3.0);
}

TEST_CASE("slab norm: constant profile") {
  const double c = 0.7, T = 2.0;
  const auto traj = constant_run(c, T, 0.05);
  const double expect = c * std::pow(16.0, 1.0 / 8.0) * std::pow(T, 1.0 / 8.0);
  CHECK(slab_norm(traj, 8.0, 8.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(slab_norm(traj, kInfinity, 2.0) == doctest::Approx(c * std::sqrt(16.0)).epsilon(1e-12));
  CHECK(slab_norm(traj, 8.0, 8.0, 0.0, 1.0) <= slab_norm(traj, 8.0, 8.0));
}

TEST_CASE("slab norm: zero trajectory and missing samples") {
  const auto traj = constant_run(0.0, 1.0, 0.1);
  CHECK(slab_norm(traj, 8.0, 8.0) == 0.0);
  CHECK_THROWS_AS((void)slab_norm(Trajectory{}, 8.0, 8.0), ConfigError);
  const auto t2 = constant_run(0.5, 1.0, 0.1);
  CHECK_THROWS_AS((void)slab_norm(t2, 4.0, 5.0), ConfigError);
}

TEST_CASE("slab norm: time refinement and Holder") {
  const Grid1D g(40.0, 1024);
  auto cfg = SolverConfig::with_degree(3, 1e-3, 1.0, 0.02);
  cfg.nonlinear = false;
  const auto coarse = evolve(test::gaussian(g), cfg);
  cfg.diag_stride = 0.01;
  const auto fine = evolve(test::gaussian(g), cfg);
  CHECK(rel_diff(slab_norm(coarse, 8.0, 8.0), slab_norm(fine, 8.0, 8.0)) < 1e-3);
  double sup8 = 0.0;
  for (std::size_t i = 0; i < fine.records.size(); ++i) sup8 = std::max(sup8, record_lebesgue_norm(fine, i, 8.0));
  CHECK(slab_norm(fine, 8.0, 8.0) <= sup8 * (1.0 + 1e-12));
}

TEST_CASE("L8 interval split") {
  const double c = 1.0, T = 4.0;
  const auto traj = constant_run(c, T, 0.01);
  const double total = slab_norm(traj, 8.0, 8.0);

  const auto one = l8_interval_split(traj, 2.0 * total);
  CHECK(one.count() == 1);
  CHECK(one.boundaries.front() == 0.0);
  CHECK(one.boundaries.back() == doctest::Approx(T));

  const double delta = total / std::pow(10.0, 1.0 / 8.0);  // about 10 pieces
  const auto split = l8_interval_split(traj, delta);
  const double predicted = std::pow(total / delta, 8.0);
  CHECK(std::abs(static_cast<double>(split.count()) - predicted) <= 1.0 + 1e-9);
  for (std::size_t i = 1; i < split.boundaries.size(); ++i) {
    CHECK(split.boundaries[i] > split.boundaries[i - 1]);
    const double piece = slab_norm(traj, 8.0, 8.0, split.boundaries[i - 1], split.boundaries[i]);
    CHECK(piece <= delta * (1.0 + 1e-12));
    if (i + 1 < split.boundaries.size()) CHECK(piece >= 0.5 * delta);
  }
  CHECK(l8_interval_split(traj, 2.0 * delta).count() <= split.count());

  const auto coarse = constant_run(c, T, 1.0);
  CHECK_THROWS_AS((void)l8_interval_split(coarse, 0.3 * total), NumericalError);
  CHECK_THROWS_AS((void)l8_interval_split(traj, 0.0), ConfigError);
}

TEST_CASE("CSV schema") {
  DiagnosticsRecord r;
  r.t = 0.5;
  r.mass = 1.25;
  r.modified_energy = 2.0;
  std::ostringstream os;
  write_csv_header(os);
  write_csv_row(os, r);
  const auto text = os.str();
  CHECK(text.substr(0, text.find('\n')) == "t,mass,energy,hhalf,l8_density,morawetz_action,modified_energy,tail");
  CHECK(text.find("0.5,1.25,0,0,0,,2,0") != std::string::npos);
}

}  // TEST_SUITE
