#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "nlslab/field.hpp"

namespace nlslab {

enum class DataFamily { gaussian, boosted_gaussian, boosted_pair, random_band };

[[nodiscard]] std::string_view to_string(DataFamily f) noexcept;
/// Throws ConfigError for an unknown name.
[[nodiscard]] DataFamily parse_family(std::string_view name);

struct InitialDataSpec {
  DataFamily family = DataFamily::gaussian;
  double amplitude = 1.0;
  double width = 1.0;  ///< sigma
  double center = 0.0;
  double velocity = 0.0;
  /// boosted_pair: packets at center -/+ separation/2 moving towards each other at -/+velocity.
  double separation = 8.0;
  double k_lo = 0.0;  ///< random_band: |k| range of the excited modes
  double k_hi = 8.0;
  double s = 1.0;     ///< random_band: coefficients shaped by <k>^{-s-1/2}, normalized in H^s
  double norm = 1.0;  ///< random_band: target ||u0||_{H^s}
  /// random_band: Gaussian envelope width; 0 keeps the field periodic and skips the
  /// boundary check.
  double envelope = 0.0;
  std::uint64_t seed = 0;
  double boundary_tolerance = 1e-6;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Gaussian families: A exp(-(x - x0)^2 / (2 sigma^2)) e^{i v x} (a sum of two for the pair).
/// random_band: seeded complex normal coefficient for each mode on the band, indexed by the
/// signed mode number so the field does not depend on n once resolved.
/// Throws ConfigError when the boundary-mass indicator exceeds the tolerance.
[[nodiscard]] ComplexField generate_initial_data(const InitialDataSpec& spec, const Grid1D& grid);

}  // namespace nlslab
