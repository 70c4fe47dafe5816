#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/imethod.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

enum class ExperimentKind {
  conservation,
  dispersive,
  bernstein,
  morawetz,
  imethod_sweep,
  scattering,
  l8_budget,
};

[[nodiscard]] std::string_view to_string(ExperimentKind k) noexcept;
[[nodiscard]] ExperimentKind parse_experiment_kind(std::string_view name);

/// Fully validated description of one run. Built only by parse_experiment().
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::conservation;
  std::string name;
  Grid1D grid{40.0, 1024};
  SolverConfig solver;
  InitialDataSpec data;
  std::uint64_t seed = 0;
  std::string canonical;  ///< canonical config text
  std::string hash;       ///< FNV-1a of the canonical text

  struct Conservation {
    double mass_tol = 1e-10;
    double energy_tol = 1e-6;
    bool halving = true;
    double ratio_lo = 3.2;
    double ratio_hi = 4.8;
  } conservation;

  struct Dispersive {
    std::vector<double> times{0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
    double tolerance = 1e-3;
    std::vector<double> closed_form_times{0.5};
    double closed_form_tol = 1e-8;
  } dispersive;

  struct Bernstein {
    std::vector<double> N_list{4, 8, 16, 32, 64};
    double s = 1.0;
    double p = 2.0;
    double q = kInfinity;
    int seeds = 50;
    double bound = 8.0;
    double stability = 0.1;
    std::vector<double> i_N_list{8, 16, 32, 64};
    double i_s = 0.5;
    double i_sigma = 0.25;
    double i_bound = 2.0;
  } bernstein;

  MorawetzConfig morawetz;

  struct Sweep {
    std::vector<double> N_list{8, 16, 32, 64};
    SweepOptions options;
    double slope_max = -0.5;
    std::size_t min_points = 3;
  } sweep;

  struct Scattering {
    double s = 1.0;
    int levels = 3;
    int tail_samples = 4;
    double decay_max = 0.5;
    bool horizon_doubling = false;
  } scattering;

  struct L8 {
    double lambda = 2.0;
    double scaling_tol = 0.05;
    double consistency_tol = 0.1;
    bool refinement = false;
    double refinement_tol = 0.2;
  } l8;
};

/// Validates every field (unknown keys included) before anything runs. `seed` overrides
/// the file's seed and is folded into the canonical form. `fallback_name` is used when the
/// config has no `name` key.
[[nodiscard]] ExperimentConfig parse_experiment(Config cfg, std::optional<std::uint64_t> seed,
                                                const std::string& fallback_name);

struct AuditResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  std::string name;
  ExperimentKind kind = ExperimentKind::conservation;
  std::string hash;
  std::vector<AuditResult> audits;
  std::filesystem::path out_dir;
  double wall_time = 0.0;
  [[nodiscard]] bool passed() const noexcept;
};

/// Runs the experiment and writes trajectory/summary/plot files plus manifest.json into
/// out_dir (created if needed). Module errors are rethrown with the experiment id and
/// config hash prepended. `log` receives one line per phase.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                                std::ostream* log = nullptr);

/// Config paths listed one per line in a matrix file ('#' comments), resolved relative to it.
[[nodiscard]] std::vector<std::filesystem::path> read_matrix(const std::filesystem::path& path);

struct SuiteEntry {
  std::filesystem::path config;
  std::optional<ExperimentResult> result;
  std::string error;  ///< set when the run threw
};

/// Runs each config into out_root/<name> on up to `workers` threads.
[[nodiscard]] std::vector<SuiteEntry> run_suite(const std::vector<std::filesystem::path>& configs,
                                                const std::filesystem::path& out_root,
                                                unsigned workers,
                                                std::optional<std::uint64_t> seed,
                                                std::ostream* log = nullptr);

}  // namespace nlslab
