#include "nlslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {
namespace {

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::mutex g_sink_mutex;
std::function<void(const std::string&)> g_sink;

void warn(const std::string& msg) {
  std::lock_guard lock(g_sink_mutex);
  if (g_sink) {
    g_sink(msg);
  } else {
    std::clog << "[nlslab] warning: " << msg << '\n';
  }
}

// u -> exp(-i tau |u|^{2p}) u, modulus untouched.
void apply_nonlinear_phase(std::span<cplx> u, double tau, double exponent) {
  for (auto& z : u) {
    const double a2 = std::norm(z);
    if (a2 == 0.0) continue;
    const double v = (exponent == 3.0) ? a2 * a2 * a2 : std::pow(a2, exponent);
    z *= std::polar(1.0, -tau * v);
  }
}

// Reusable buffers and the precomputed linear phase for a fixed (grid, dt).
class Stepper {
 public:
  Stepper(const Grid1D& grid, double dt, const SolverConfig& cfg)
      : grid_(grid), dt_(dt), cfg_(cfg), phase_(grid.size()) {
    for (std::size_t j = 0; j < phase_.size(); ++j) {
      const double k = grid.wavenumber(j);
      phase_[j] = std::polar(1.0, -dt * k * k);
    }
  }

  /// Advances u in place by one Strang step; returns the spectral tail seen mid-step.
  double step(std::vector<cplx>& u) {
    if (cfg_.nonlinear) apply_nonlinear_phase(u, 0.5 * dt_, cfg_.exponent);
    fft::forward_inplace(u);
    const double tail = tail_indicator_from_spectrum(grid_, u);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] *= phase_[j];
    fft::inverse_inplace(u);
    if (cfg_.nonlinear) apply_nonlinear_phase(u, 0.5 * dt_, cfg_.exponent);
    return tail;
  }

 private:
  Grid1D grid_;
  double dt_;
  SolverConfig cfg_;
  std::vector<cplx> phase_;
};

std::string format_record(const DiagnosticsRecord& r) {
  std::ostringstream os;
  write_csv_header(os);
  write_csv_row(os, r);
  return os.str();
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

void set_warning_sink(std::function<void(const std::string&)> sink) {
  std::lock_guard lock(g_sink_mutex);
  g_sink = std::move(sink);
}

SolverConfig SolverConfig::with_degree(int k, double dt, double final_time, double diag_stride) {
  if (k < 1) throw ConfigError("solver.k: degree must be a positive integer");
  SolverConfig cfg;
  cfg.exponent = static_cast<double>(k);
  cfg.dt = dt;
  cfg.final_time = final_time;
  cfg.diag_stride = diag_stride;
  return cfg;
}

void SolverConfig::validate() const {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ConfigError("solver.p: nonlinearity exponent must be positive");
  }
  if (!(dt > 0.0)) throw ConfigError("solver.dt: must be positive");
  if (!(final_time > 0.0)) throw ConfigError("solver.T: must be positive");
  if (!(diag_stride >= dt)) throw ConfigError("solver.diag_stride: must be >= dt");
  if (!(tail_threshold > 0.0 && tail_threshold < 1.0)) {
    throw ConfigError("solver.tail_threshold: must lie in (0, 1)");
  }
  const double steps_real = final_time / dt;
  if (std::abs(steps_real - std::round(steps_real)) > 1e-6 * std::max(1.0, steps_real)) {
    throw ConfigError("solver.T: must be an integer multiple of solver.dt");
  }
  const double stride_real = diag_stride / dt;
  if (std::abs(stride_real - std::round(stride_real)) > 1e-6 * std::max(1.0, stride_real)) {
    throw ConfigError("solver.diag_stride: must be an integer multiple of solver.dt");
  }
}

long SolverConfig::steps() const { return std::lround(final_time / dt); }
long SolverConfig::stride_steps() const { return std::max(1L, std::lround(diag_stride / dt)); }

ComplexField free_propagate(const ComplexField& field, double t) {
  const auto& grid = field.grid();
  auto c = fft::spectrum(field);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid.wavenumber(j);
    c[j] *= std::polar(1.0, -t * k * k);
  }
  return fft::from_spectrum(grid, std::move(c), field.time() + t);
}

ComplexField nonlinear_phase_step(const ComplexField& field, double dt, double exponent) {
  std::vector<cplx> u(field.samples().begin(), field.samples().end());
  apply_nonlinear_phase(u, dt, exponent);
  return ComplexField(field.grid(), std::move(u), field.time() + dt);
}

ComplexField strang_step(const ComplexField& field, double dt, const SolverConfig& cfg) {
  if (!(dt > 0.0)) throw ConfigError("strang_step: dt must be positive");
  Stepper stepper(field.grid(), dt, cfg);
  std::vector<cplx> u(field.samples().begin(), field.samples().end());
  const double tail = stepper.step(u);
  if (tail > cfg.tail_threshold) {
    warn("spectral tail " + short_num(tail) + " exceeds threshold " + short_num(cfg.tail_threshold) +
         " at t = " + short_num(field.time() + dt));
  }
  return ComplexField(field.grid(), std::move(u), field.time() + dt);
}

DiagnosticsRecord measure(const ComplexField& field, double exponent,
                          const DiagnosticsRequest& request) {
  DiagnosticsRecord rec;
  rec.t = field.time();
  const auto c = fft::spectrum(field);
  const auto& grid = field.grid();
  rec.mass = mass(field);
  const double grad = sobolev_norm_from_spectrum(grid, c, 1.0, Homogeneity::homogeneous);
  rec.energy = 0.5 * grad * grad +
               lebesgue_integral(field, 2.0 * exponent + 2.0) / (2.0 * exponent + 2.0);
  rec.hhalf = sobolev_norm_from_spectrum(grid, c, 0.5, Homogeneity::homogeneous);
  rec.l8_density = lebesgue_integral(field, 8.0);
  rec.tail = tail_indicator_from_spectrum(grid, c);
  rec.boundary = boundary_indicator(field);
  if (request.morawetz_action) rec.morawetz_action = request.morawetz_action(field);
  if (request.modified_energy) rec.modified_energy = request.modified_energy(field);
  for (double r : request.lebesgue_exponents) rec.lebesgue.emplace_back(r, lebesgue_norm(field, r));
  return rec;
}

Trajectory evolve(const ComplexField& u0, const SolverConfig& cfg,
                  const DiagnosticsRequest& request) {
  cfg.validate();
  Trajectory traj;
  traj.config = cfg;
  traj.initial = u0.with_time(0.0);

  const long n_steps = cfg.steps();
  const long stride = cfg.stride_steps();
  const double dt = cfg.final_time / static_cast<double>(n_steps);
  const auto& grid = u0.grid();

  auto wants_snapshot = [&](double t) {
    switch (request.snapshots) {
      case SnapshotPolicy::none: return false;
      case SnapshotPolicy::all: return true;
      case SnapshotPolicy::selected:
        return std::any_of(request.snapshot_times.begin(), request.snapshot_times.end(),
                           [t](double s) { return near(t, s); });
    }
    return false;
  };

  auto sample = [&](const std::vector<cplx>& u, long step) {
    const double t = static_cast<double>(step) * dt;
    if (!all_finite(u)) {
      std::string last = traj.records.empty() ? std::string("(none)\n")
                                              : format_record(traj.records.back());
      throw NumericalError("non-finite field at t = " + short_num(t) +
                           "; last healthy record:\n" + last);
    }
    ComplexField f(grid, u, t);
    traj.records.push_back(measure(f, cfg.exponent, request));
    if (wants_snapshot(t)) traj.snapshots.push_back(std::move(f));
  };

  Stepper stepper(grid, dt, cfg);
  std::vector<cplx> u(u0.samples().begin(), u0.samples().end());
  sample(u, 0);
  bool warned = false;
  for (long step = 1; step <= n_steps; ++step) {
    const double tail = stepper.step(u);
    if (tail > cfg.tail_threshold) {
      ++traj.tail_warnings;
      if (!warned) {
        warn("spectral tail " + short_num(tail) + " exceeds threshold " +
             short_num(cfg.tail_threshold) + " at t = " +
             short_num(static_cast<double>(step) * dt) + "; refine grid.n");
        warned = true;
      }
    }
    if (step % stride == 0 || step == n_steps) sample(u, step);
  }
  return traj;
}

std::vector<double> dispersive_audit(const ComplexField& f, const std::vector<double>& times) {
  const double l1 = lebesgue_norm(f, 1.0);
  std::vector<double> ratios;
  ratios.reserve(times.size());
  for (double t : times) {
    if (t == 0.0) throw ConfigError("dispersive_audit: t must be nonzero");
    if (l1 == 0.0) {
      ratios.push_back(0.0);
      continue;
    }
    const auto ft = free_propagate(f, t);
    ratios.push_back(lebesgue_norm(ft, kInfinity) * std::sqrt(4.0 * std::numbers::pi * std::abs(t)) /
                     l1);
  }
  return ratios;
}

}  // namespace nlslab
