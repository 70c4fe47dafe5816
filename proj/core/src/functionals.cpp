#include "nlslab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

double mass(const ComplexField& field) { return lebesgue_integral(field, 2.0); }

EnergyParts energy_parts(const ComplexField& field, double exponent) {
  const double grad = sobolev_norm(field, 1.0, Homogeneity::homogeneous);
  const double e = 2.0 * exponent + 2.0;
  return {0.5 * grad * grad, lebesgue_integral(field, e) / e};
}

double energy(const ComplexField& field, double exponent) {
  return energy_parts(field, exponent).total();
}

namespace {
double reciprocal(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }
}  // namespace

bool is_admissible(double q, double r) noexcept {
  if (!(r >= 2.0) || !(q >= 1.0)) return false;
  return std::abs(2.0 * reciprocal(q) + reciprocal(r) - 0.5) <= 1e-12;
}

AdmissiblePair::AdmissiblePair(double q, double r) : q_(q), r_(r) {
  if (!is_admissible(q, r)) {
    throw ConfigError("(q, r) is not Schrodinger-admissible: need 2/q + 1/r = 1/2, r >= 2");
  }
}

SlabAccumulator::SlabAccumulator(double q, double r) : q_(q), r_(r) {
  if (!(q >= 1.0) || !(r >= 1.0)) throw ConfigError("slab exponents must be >= 1");
}

void SlabAccumulator::add(double t, double spatial_norm) {
  if (!times_.empty() && !(t > times_.back())) {
    throw ConfigError("SlabAccumulator: sample times must be strictly increasing");
  }
  if (!std::isinf(q_) && !times_.empty()) {
    const double dt = t - times_.back();
    integral_ += 0.5 * dt * (std::pow(norms_.back(), q_) + std::pow(spatial_norm, q_));
  }
  sup_ = std::max(sup_, spatial_norm);
  times_.push_back(t);
  norms_.push_back(spatial_norm);
}

double SlabAccumulator::value() const {
  if (std::isinf(q_)) return sup_;
  return std::pow(integral_, 1.0 / q_);
}

double record_lebesgue_norm(const Trajectory& traj, std::size_t i, double r) {
  const auto& rec = traj.records.at(i);
  if (r == 2.0) return std::sqrt(rec.mass);
  if (r == 8.0) return std::pow(rec.l8_density, 0.125);
  for (const auto& [rr, v] : rec.lebesgue) {
    if (rr == r) return v;
  }
  if (const auto* snap = traj.snapshot_at(rec.t)) return lebesgue_norm(*snap, r);
  char buf[128];
  std::snprintf(buf, sizeof buf, "slab_norm: no L^%g sample at record time t = %.6g", r, rec.t);
  throw ConfigError(buf);
}

double slab_norm(const Trajectory& traj, double q, double r, double t0, double t1) {
  SlabAccumulator acc(q, r);
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const double t = traj.records[i].t;
    if (t < t0 - 1e-12 || t > t1 + 1e-12) continue;
    acc.add(t, record_lebesgue_norm(traj, i, r));
  }
  if (acc.size() < 2) throw ConfigError("slab_norm: need at least two samples in the interval");
  return acc.value();
}

double slab_norm(const Trajectory& traj, double q, double r) {
  if (traj.records.size() < 2) throw ConfigError("slab_norm: need at least two records");
  return slab_norm(traj, q, r, traj.records.front().t, traj.records.back().t);
}

IntervalSplit l8_interval_split(const Trajectory& traj, double delta) {
  if (!(delta > 0.0)) throw ConfigError("l8_interval_split: delta must be positive");
  const auto& recs = traj.records;
  if (recs.size() < 2) throw ConfigError("l8_interval_split: need at least two records");

  const double cap = std::pow(delta, 8.0);
  const double floor = std::pow(0.5 * delta, 8.0);
  // Cumulative int int |u|^8 at each record (trapezoid).
  std::vector<double> cum(recs.size(), 0.0);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (recs[i].t - recs[i - 1].t) *
                              (recs[i].l8_density + recs[i - 1].l8_density);
  }

  IntervalSplit out;
  out.boundaries.push_back(recs.front().t);
  std::size_t start = 0;
  const std::size_t last = recs.size() - 1;
  while (start < last) {
    std::size_t end = start;
    while (end < last && cum[end + 1] - cum[start] <= cap) ++end;
    if (end == last) break;
    if (end == start || cum[end] - cum[start] < floor) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "l8_interval_split: sampling too coarse near t = %.6g; refine diag_stride",
                    recs[start].t);
      throw NumericalError(buf);
    }
    out.boundaries.push_back(recs[end].t);
    start = end;
  }
  out.boundaries.push_back(recs.back().t);
  return out;
}

}  // namespace nlslab
