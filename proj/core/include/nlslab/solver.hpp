#pragma once

#include <functional>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

/// Exact linear evolution e^{it d_xx}: multiplies mode k by exp(-i t k^2). Advances the
/// time stamp by t.
[[nodiscard]] ComplexField free_propagate(const ComplexField& field, double t);

/// Exact solution of i u_t = |u|^{2p} u over dt: u -> exp(-i dt |u|^{2p}) u.
/// Time stamp advanced by dt.
[[nodiscard]] ComplexField nonlinear_phase_step(const ComplexField& field, double dt,
                                                double exponent);

/// One Strang step N(dt/2) L(dt) N(dt/2). A spectral tail above cfg.tail_threshold is
/// logged as a resolution warning.
[[nodiscard]] ComplexField strang_step(const ComplexField& field, double dt,
                                       const SolverConfig& cfg);

enum class SnapshotPolicy { none, all, selected };

/// Which diagnostics evolve() evaluates at each sample time. Mass, energy, H^{1/2},
/// int|u|^8, tail and boundary indicators are always recorded.
struct DiagnosticsRequest {
  std::function<double(const ComplexField&)> morawetz_action;
  std::function<double(const ComplexField&)> modified_energy;
  std::vector<double> lebesgue_exponents;
  SnapshotPolicy snapshots = SnapshotPolicy::none;
  std::vector<double> snapshot_times;  ///< used with SnapshotPolicy::selected
};

/// Diagnostic record of a single field (time taken from the field).
[[nodiscard]] DiagnosticsRecord measure(const ComplexField& field, double exponent,
                                        const DiagnosticsRequest& request);

/// Step from t = 0 to cfg.final_time with fixed dt, sampling diagnostics every
/// cfg.diag_stride and at the final time. Deterministic given (u0, cfg).
/// Throws NumericalError (carrying the last healthy record) if a NaN appears.
[[nodiscard]] Trajectory evolve(const ComplexField& u0, const SolverConfig& cfg,
                                const DiagnosticsRequest& request = {});

/// ||e^{it d_xx} f||_inf (4 pi |t|)^{1/2} / ||f||_1 for each t; 0 for f = 0.
/// Throws ConfigError for t = 0.
[[nodiscard]] std::vector<double> dispersive_audit(const ComplexField& f,
                                                   const std::vector<double>& times);

/// Warning sink used by the solver; defaults to std::clog. Pass nullptr to restore.
void set_warning_sink(std::function<void(const std::string&)> sink);

}  // namespace nlslab
