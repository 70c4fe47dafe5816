#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/symbol.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

/// m_N(|xi|): 1 for |xi| <= N, (|xi|/N)^{s-1} for |xi| >= 2N.
///
/// On (N, 2N), with tau = log2(|xi|/N), ln m = (s-1) ln2 F_s(tau) where F_s is C^1,
/// F_s(0) = F_s'(0) = 0, F_s(1) = F_s'(1) = 1 and F_s' <= 1/(1-s). The last bound keeps
/// |xi| m_N(xi) nondecreasing for every s in (0,1).
[[nodiscard]] double m_symbol(double xi, double N, double s);

class IMultiplier {
 public:
  /// Requires N > 1 and 0 < s < 1 (ConfigError otherwise).
  IMultiplier(double N, double s);

  [[nodiscard]] double N() const noexcept { return N_; }
  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] double operator()(double k) const { return m_symbol(k, N_, s_); }
  [[nodiscard]] SymbolSpec symbol() const;

 private:
  double N_, s_;
};

[[nodiscard]] ComplexField apply_I(const ComplexField& field, const IMultiplier& im);

/// Ratios LHS/RHS at p = 2 for the smoothing-operator estimates; nullopt for 0/0.
struct IPropertyReport {
  double N = 0.0, s = 0.0, sigma = 0.0;
  std::optional<double> i1;        ///< ||I f||_2 / ||f||_2
  std::optional<double> i2;        ///< || |grad|^sigma P_>N f||_2 / (N^{sigma-1} ||grad I f||_2)
  std::optional<double> i3_lower;  ///< ||f||_{H^s} / ||I f||_{H^1}
  std::optional<double> i3_upper;  ///< ||I f||_{H^1} / (N^{1-s} ||f||_{H^s})
  std::optional<double> i4;        ///< ||I f||_{H-dot^1} / (N^{1-s} ||f||_{H-dot^s})
};

/// Requires 0 <= sigma <= s < 1.
[[nodiscard]] IPropertyReport i_property_audit(const ComplexField& field, const IMultiplier& im,
                                               double sigma);

/// E(I_N u) for the nonlinearity |u|^{2p} u.
[[nodiscard]] double modified_energy(const ComplexField& field, const IMultiplier& im,
                                     double exponent);

[[nodiscard]] std::function<double(const ComplexField&)> modified_energy_hook(IMultiplier im,
                                                                              double exponent);

struct RescaleParams {
  double lambda = 1.0;    ///< >= 1
  double exponent = 3.0;  ///< p (the degree k for integer nonlinearities)
  std::size_t max_points = std::size_t{1} << 22;
};

/// u^lambda(x) = lambda^{-1/p} u(x / lambda) on a grid of length lambda L with spacing no
/// larger than the original (point count rounded up to a power of two), by spectral
/// interpolation. Time stamp multiplied by lambda^2.
[[nodiscard]] ComplexField rescale(const ComplexField& field, const RescaleParams& rp);

/// Critical regularity 1/2 - 1/p.
[[nodiscard]] constexpr double critical_regularity(double exponent) noexcept {
  return 0.5 - 1.0 / exponent;
}

/// The two smallness constraints that select the rescaling parameter.
struct LambdaConstraints {
  double energy_term = 0.0;     ///< N^{1-s} lambda^{1/2-1/p-s} ||u0||_{H^s}
  double potential_term = 0.0;  ///< lambda^{1/(2p+2)-1/p} ||u0||_{H^s}
};

[[nodiscard]] LambdaConstraints lambda_constraints(double lambda, double hs_norm, double N,
                                                   double s, double exponent);

/// Smallest power-of-two lambda making both constraints <= eta. Throws ConfigError when
/// s <= 1/2 - 1/p (large lambda does not help) and NumericalError past lambda = 2^200.
[[nodiscard]] double lambda_for_small_energy(double hs_norm, double N, double s, double exponent,
                                             double eta = 0.1);

/// One row of the almost-conservation sweep.
struct IncrementPoint {
  double N = 0.0;
  double lambda = 1.0;
  double e0 = 0.0;      ///< E(I_N u^lambda(0))
  double sup_e = 0.0;   ///< sup_t E(I_N u^lambda(t))
  double increment = 0.0;  ///< sup_t |E(I_N u(t)) - E(I_N u(0))|
  double noise_floor = 0.0;
  double l8_norm = 0.0;  ///< ||u^lambda||_{L^8_{t,x}} over the run
  bool included = false;
};

struct IncrementSweep {
  std::vector<IncrementPoint> points;
  double slope = 0.0;
  double slope_stderr = 0.0;
  std::size_t fitted = 0;
  double noise_factor = 2.0;
  double eta = 0.1;
};

struct SweepOptions {
  double s = 0.7;
  double energy_target = 1.0;  ///< rescale until E(I_N u0^lambda) <= this
  double noise_factor = 2.0;   ///< point enters the fit iff increment > factor * noise floor
  double eta = 0.1;            ///< recorded L^8 smallness level
  std::size_t max_points = std::size_t{1} << 22;
  unsigned workers = 1;
};

/// For each N: rescale u0 by the smallest power of two with E(I_N u0^lambda) <= target,
/// evolve with cfg, record sup_t |E(I_N u(t)) - E(I_N u(0))|, and fit log increment against
/// log N by least squares over points above the noise floor. The noise floor of a point is
/// the larger of the drift of the kinetic part of E(I_N u) under the linear flow and the
/// drift of the true energy in the nonlinear run.
[[nodiscard]] IncrementSweep increment_sweep(const ComplexField& u0, const std::vector<double>& Ns,
                                             const SolverConfig& cfg, const SweepOptions& opts);

}  // namespace nlslab
