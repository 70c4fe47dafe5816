#pragma once

#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

/// M[u] = ||u||_2^2.
[[nodiscard]] double mass(const ComplexField& field);

struct EnergyParts {
  double kinetic = 0.0;    ///< (1/2) ||u_x||_2^2, spectral
  double potential = 0.0;  ///< ||u||_{2p+2}^{2p+2} / (2p+2), rectangle rule
  [[nodiscard]] double total() const noexcept { return kinetic + potential; }
};

/// E[u] for the nonlinearity |u|^{2p} u.
[[nodiscard]] EnergyParts energy_parts(const ComplexField& field, double exponent);
[[nodiscard]] double energy(const ComplexField& field, double exponent);

/// Schrodinger-admissible pair (q, r): 2/q + 1/r = 1/2 with 2 <= r <= inf.
class AdmissiblePair {
 public:
  /// Throws ConfigError if (q, r) is not admissible.
  AdmissiblePair(double q, double r);
  [[nodiscard]] double q() const noexcept { return q_; }
  [[nodiscard]] double r() const noexcept { return r_; }

 private:
  double q_, r_;
};

/// 2/q + 1/r == 1/2 (1/inf = 0), compared to 1e-12; false unless 2 <= r <= inf.
[[nodiscard]] bool is_admissible(double q, double r) noexcept;

/// Running L^q_t L^r_x estimate from samples (t_i, ||u(t_i)||_r), trapezoid in time.
class SlabAccumulator {
 public:
  SlabAccumulator(double q, double r);

  /// Throws ConfigError unless t exceeds every previous sample time.
  void add(double t, double spatial_norm);

  [[nodiscard]] double value() const;
  [[nodiscard]] double q() const noexcept { return q_; }
  [[nodiscard]] double r() const noexcept { return r_; }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }

 private:
  double q_, r_;
  std::vector<double> times_;
  std::vector<double> norms_;
  double integral_ = 0.0;  // int ||u||_r^q dt so far
  double sup_ = 0.0;
};

/// ||u(t_i)||_r at record i: from mass (r = 2), l8_density (r = 8) or the record's
/// extra Lebesgue norms, falling back to a stored snapshot. Throws ConfigError if missing.
[[nodiscard]] double record_lebesgue_norm(const Trajectory& traj, std::size_t i, double r);

/// (int ||u(t)||_r^q dt)^{1/q} over the record times (trapezoid); q = inf gives the max.
/// Requires at least two records.
[[nodiscard]] double slab_norm(const Trajectory& traj, double q, double r);

/// Same over the records with t in [t0, t1].
[[nodiscard]] double slab_norm(const Trajectory& traj, double q, double r, double t0, double t1);

struct IntervalSplit {
  std::vector<double> boundaries;  ///< t_0 = 0 < t_1 < ... < t_L = T
  [[nodiscard]] std::size_t count() const noexcept {
    return boundaries.empty() ? 0 : boundaries.size() - 1;
  }
};

/// Greedy left-to-right partition of [0, T] at record times with ||u||_{L^8(I_j)} <= delta
/// on every piece and >= delta/2 on every piece but the last. Throws NumericalError when
/// the sampling is too coarse to place a boundary.
[[nodiscard]] IntervalSplit l8_interval_split(const Trajectory& traj, double delta);

}  // namespace nlslab
