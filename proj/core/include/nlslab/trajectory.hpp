#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

/// Time-stepping parameters for i u_t + u_xx = |u|^{2p} u.
struct SolverConfig {
  double exponent = 3.0;  ///< p; the integer degree k is the special case p = k
  double dt = 1e-3;
  double final_time = 1.0;
  double diag_stride = 0.01;
  double tail_threshold = 1e-8;
  bool nonlinear = true;  ///< false replaces the nonlinear subflow by the identity

  [[nodiscard]] static SolverConfig with_degree(int k, double dt, double final_time,
                                                double diag_stride);

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Number of steps and steps per diagnostic sample implied by dt, T and stride.
  [[nodiscard]] long steps() const;
  [[nodiscard]] long stride_steps() const;
};

/// Scalar diagnostics at one sample time.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double hhalf = 0.0;       ///< homogeneous H^{1/2} norm
  double l8_density = 0.0;  ///< int |u|^8 dx
  std::optional<double> morawetz_action;
  std::optional<double> modified_energy;
  double tail = 0.0;
  double boundary = 0.0;  ///< boundary-mass indicator, reported in summaries
  /// Extra Lebesgue norms ||u(t)||_r requested by the caller, as (r, value).
  std::vector<std::pair<double, double>> lebesgue;
};

/// Column order of the trajectory CSV.
inline constexpr const char* kDiagnosticsCsvHeader =
    "t,mass,energy,hhalf,l8_density,morawetz_action,modified_energy,tail";

void write_csv_header(std::ostream& os);
/// One row; absent optionals are emitted as empty cells. Numbers use %.17g.
void write_csv_row(std::ostream& os, const DiagnosticsRecord& rec);

struct Trajectory {
  SolverConfig config;
  std::optional<ComplexField> initial;
  std::vector<DiagnosticsRecord> records;
  std::vector<ComplexField> snapshots;
  long tail_warnings = 0;

  /// Snapshot whose time stamp is within 1e-9 of t, or nullptr.
  [[nodiscard]] const ComplexField* snapshot_at(double t) const;
  [[nodiscard]] std::vector<double> times() const;
};

void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace nlslab
