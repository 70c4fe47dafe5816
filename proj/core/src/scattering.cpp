#include "nlslab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {

ComplexField pullback(const ComplexField& field) {
  if (field.time() == 0.0) return field;
  return free_propagate(field, -field.time()).with_time(field.time());
}

namespace {

double hs_distance(const Grid1D& g, const std::vector<cplx>& a, const std::vector<cplx>& b,
                   double s) {
  std::vector<cplx> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return sobolev_norm_from_spectrum(g, d, s, Homogeneity::inhomogeneous);
}

}  // namespace

ScatteringReport cauchy_audit(const Trajectory& traj, double s, unsigned threads) {
  if (traj.snapshots.size() < 4) {
    throw ConfigError("cauchy_audit: needs at least 4 snapshots, trajectory has " +
                      std::to_string(traj.snapshots.size()));
  }
  ScatteringReport rep;
  rep.s = s;
  rep.exploratory = traj.config.exponent <= 2.0;
  const std::size_t m = traj.snapshots.size();
  const Grid1D& g = traj.snapshots.front().grid();

  std::vector<std::vector<cplx>> spectra(m);
  for (std::size_t i = 0; i < m; ++i) {
    rep.times.push_back(traj.snapshots[i].time());
    spectra[i] = fft::spectrum(pullback(traj.snapshots[i]));
  }
  rep.distance_matrix.assign(m, std::vector<double>(m, 0.0));

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(m));
  auto fill_row = [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      rep.distance_matrix[i][j] = hs_distance(g, spectra[i], spectra[j], s);
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < m; ++i) fill_row(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < m; i += workers) fill_row(i);
      });
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) rep.distance_matrix[i][j] = rep.distance_matrix[j][i];
  }

  const double scale = sobolev_norm_from_spectrum(g, spectra.back(), s, Homogeneity::inhomogeneous);
  const double floor = 1e-12 * std::max(scale, 1e-300);
  const double first = rep.distance_matrix[0][1];
  const double last = rep.distance_matrix[m - 2][m - 1];
  rep.decay_ratio = first <= floor ? 0.0 : last / first;
  rep.cauchy_trend = true;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (rep.distance_matrix[i][i + 1] > rep.distance_matrix[i - 1][i] + floor) {
      rep.cauchy_trend = false;
    }
  }
  return rep;
}

ScatteringReport scattering_state(const Trajectory& traj, double s, unsigned threads) {
  ScatteringReport rep = cauchy_audit(traj, s, threads);
  rep.conclusive = rep.decay_ratio < 1.0;

  const ComplexField& last = traj.snapshots.back();
  rep.u_plus = pullback(last).with_time(0.0);
  const double t_end = last.time();
  for (const auto& snap : traj.snapshots) {
    const auto free = free_propagate(*rep.u_plus, snap.time());
    rep.residuals.push_back(
        sobolev_norm(snap.combine(1.0, free, -1.0), s, Homogeneity::inhomogeneous));
  }
  const double floor =
      1e-12 * std::max(sobolev_norm(last, s, Homogeneity::inhomogeneous), 1e-300);
  rep.residual_nonincreasing = true;
  for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
    if (rep.times[i - 1] < 0.5 * t_end - 1e-9) continue;
    if (rep.residuals[i] > rep.residuals[i - 1] + floor) rep.residual_nonincreasing = false;
  }
  return rep;
}

std::vector<double> scattering_schedule(double final_time, int levels, int tail) {
  if (!(final_time > 0.0)) throw ConfigError("scattering.schedule: T must be positive");
  if (levels < 3) throw ConfigError("scattering.levels: need at least 3 geometric levels");
  if (tail < 0) throw ConfigError("scattering.tail_samples: must be >= 0");
  std::set<double> ts;
  for (int m = levels; m >= 0; --m) ts.insert(std::ldexp(final_time, -m));
  for (int i = 1; i <= tail; ++i) {
    ts.insert(0.5 * final_time * (1.0 + static_cast<double>(i) / (tail + 1)));
  }
  return {ts.begin(), ts.end()};
}

L8Budget global_l8_budget(const Trajectory& traj) {
  if (!traj.initial) throw ConfigError("global_l8_budget: trajectory has no initial field");
  L8Budget out;
  const double m0 = mass(*traj.initial);
  if (m0 == 0.0) return out;
  out.l8_norm = slab_norm(traj, 8.0, 8.0);
  out.h1_ratio = out.l8_norm / sobolev_norm(*traj.initial, 1.0, Homogeneity::inhomogeneous);
  double sup_h = 0.0;
  for (const auto& r : traj.records) sup_h = std::max(sup_h, r.hhalf);
  out.morawetz_ratio = out.l8_norm / (std::pow(m0, 0.375) * std::pow(sup_h, 0.25));
  return out;
}

}  // namespace nlslab
