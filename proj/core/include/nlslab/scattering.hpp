#pragma once

#include <optional>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

/// Interaction-picture pullback v(t) = e^{-it d_xx} u(t), t the field's time stamp.
/// The time stamp is kept.
[[nodiscard]] ComplexField pullback(const ComplexField& field);

struct ScatteringReport {
  double s = 1.0;
  std::vector<double> times;
  std::vector<std::vector<double>> distance_matrix;  ///< ||v(t_i) - v(t_j)||_{H^s}
  double decay_ratio = 0.0;  ///< d(last pair) / d(first pair); 0 when already converged
  bool cauchy_trend = false;  ///< consecutive distances nonincreasing
  std::optional<ComplexField> u_plus;
  std::vector<double> residuals;  ///< ||u(t_i) - e^{it_i d_xx} u_plus||_{H^s}
  bool residual_nonincreasing = false;  ///< over snapshots with t >= T/2
  bool conclusive = false;
  bool exploratory = false;  ///< exponent <= 2: no scattering claim exists there
};

/// Pullback distance matrix over the trajectory's snapshots (ConfigError if fewer than 4).
/// Rows are computed on up to `threads` threads (0 = hardware concurrency).
[[nodiscard]] ScatteringReport cauchy_audit(const Trajectory& traj, double s = 1.0,
                                            unsigned threads = 0);

/// cauchy_audit plus u_plus = v(T_final) and the residual curve. A decay ratio >= 1 marks
/// the report inconclusive instead of throwing.
[[nodiscard]] ScatteringReport scattering_state(const Trajectory& traj, double s = 1.0,
                                                unsigned threads = 0);

/// Snapshot times {T/2^m : m = levels..0} together with `tail` uniform samples on (T/2, T).
[[nodiscard]] std::vector<double> scattering_schedule(double final_time, int levels, int tail);

struct L8Budget {
  double l8_norm = 0.0;   ///< ||u||_{L^8_{t,x}} over the run
  double h1_ratio = 0.0;  ///< l8_norm / ||u0||_{H^1}
  double morawetz_ratio = 0.0;  ///< l8_norm / (||u0||_2^{3/4} sup_t ||u||_{H-dot^{1/2}}^{1/4})
};

/// Requires traj.initial and at least two records; zero data gives all zeros.
[[nodiscard]] L8Budget global_l8_budget(const Trajectory& traj);

}  // namespace nlslab
