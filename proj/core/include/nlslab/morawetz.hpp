#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

using Vec4 = std::array<double, 4>;

/// The orthonormal change of variables z = A x,
/// A = 1/2 [[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[-1,1,1,-1]].
/// z_1 is the centre-of-mass direction; z' = (z_2, z_3, z_4) only sees relative positions.
struct RotationMatrix {
  static constexpr std::array<std::array<int, 4>, 4> twice = {{
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, 1, -1},
      {-1, 1, 1, -1},
  }};

  [[nodiscard]] static double entry(std::size_t i, std::size_t j) noexcept {
    return 0.5 * twice[i][j];
  }
  [[nodiscard]] static Vec4 apply(const Vec4& x) noexcept;
  [[nodiscard]] static Vec4 apply_transpose(const Vec4& z) noexcept;
};

/// Gradient of a(z) = |z'|: (0, z_2, z_3, z_4)/|z'|, and the zero vector on z' = 0.
[[nodiscard]] Vec4 weight_gradient(const Vec4& z) noexcept;

enum class SingularPolicy {
  zero,  ///< integrand set to 0 on the diagonal x_1 = x_2 = x_3 = x_4
};

/// Parameters of the 4D tensor-grid quadrature.
///
/// The field is resampled by trigonometric interpolation onto n_sub equispaced points of
/// the window [c - w, c + w), c the |u|^2 centroid unless fixed.
struct MorawetzConfig {
  std::size_t n_sub = 48;
  double window = 0.0;  ///< half-width w; 0 picks the smallest w holding all but 1e-12 of the mass
  std::optional<double> center;
  SingularPolicy singular_policy = SingularPolicy::zero;
  std::size_t max_points = std::size_t{1} << 28;  ///< budget on n_sub^4
  double max_sampling_loss = 1e-4;  ///< relative L2 loss of the resampled field
  unsigned threads = 0;              ///< 0 = hardware concurrency

  /// Throws ConfigError when n_sub^4 exceeds the budget or n_sub is out of range.
  void validate() const;
};

struct ActionEvaluation {
  double value = 0.0;
  double center = 0.0;
  double window = 0.0;
  double sampling_loss = 0.0;
  std::size_t points = 0;
};

/// M_a = 2 Im int conj(w) grad_x[a(Ax)] . grad_x w dx, w(x) = prod_j u(x_j), by the
/// rectangle rule on the n_sub^4 tensor grid. Throws NumericalError when the resampled
/// field loses more than cfg.max_sampling_loss of its L2 norm, ConfigError when over budget.
[[nodiscard]] ActionEvaluation evaluate_interaction_action(const ComplexField& field,
                                                           const MorawetzConfig& cfg);
[[nodiscard]] double interaction_action(const ComplexField& field, const MorawetzConfig& cfg);

/// |M_a| / (4 ||u||_{H^{1/2}}^2 ||u||_2^6); 0 for the zero field.
[[nodiscard]] double action_bound_ratio(const ComplexField& field, const MorawetzConfig& cfg);

/// |M_a(cfg) - M_a(cfg with 3/4 of the points)|, a conservative per-sample quadrature error.
[[nodiscard]] double action_quadrature_error(const ComplexField& field,
                                             const MorawetzConfig& cfg);

/// Diagnostics hook for evolve().
[[nodiscard]] std::function<double(const ComplexField&)> action_hook(MorawetzConfig cfg);

/// The lower-bound constant tested by the monotonicity audit.
inline constexpr double kMorawetzConstant = 8.0 * std::numbers::pi;

struct MonotonicityReport {
  std::vector<double> times;       ///< all samples
  std::vector<double> action;      ///< M_a at each sample
  std::vector<double> interior_times;
  std::vector<double> derivative;  ///< central difference dM_a/dt at interior samples
  std::vector<double> defects;     ///< derivative - 8 pi int |u|^8
  double min_defect = 0.0;
  double tol_mono = 0.0;
  double third_derivative_scale = 0.0;
  double quadrature_error = 0.0;
  std::optional<double> empirical_constant;  ///< min dM_a/dt / int |u|^8

  double action_increment = 0.0;  ///< M_a(T) - M_a(0)
  double integrated_bound = 0.0;  ///< 8 pi int int |u|^8
  double integrated_tolerance = 0.0;

  [[nodiscard]] bool pointwise_passed() const noexcept { return min_defect >= -tol_mono; }
  [[nodiscard]] bool integrated_passed() const noexcept {
    return action_increment >= integrated_bound - integrated_tolerance;
  }
  [[nodiscard]] bool passed() const noexcept { return pointwise_passed() && integrated_passed(); }
};

/// Requires >= 3 records carrying morawetz_action. `quadrature_error` bounds the error of
/// each M_a sample and enters both tolerances.
[[nodiscard]] MonotonicityReport monotonicity_audit(const Trajectory& traj,
                                                    double quadrature_error = 0.0);

/// int int |u|^8 dx dt / (sup_t ||u||_{H^{1/2}}^2 * M[u_0]^3); 0 for zero data.
[[nodiscard]] double integrated_audit(const Trajectory& traj);

}  // namespace nlslab
