#pragma once

#include <limits>

#include "nlslab/field.hpp"

namespace nlslab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Homogeneity { homogeneous, inhomogeneous };

/// (sum_j |u_j|^r dx)^{1/r} by the rectangle rule; r = infinity gives max |u_j|.
/// Throws ConfigError for r < 1.
[[nodiscard]] double lebesgue_norm(const ComplexField& field, double r);

/// int |u|^r dx by the rectangle rule (no root taken).
[[nodiscard]] double lebesgue_integral(const ComplexField& field, double r);

/// Plancherel-normalized Sobolev norm, ||w(k)^s u_hat||, w = |k| or <k>.
/// Homogeneous norms with s < 0 require a vanishing mean (ConfigError otherwise).
[[nodiscard]] double sobolev_norm(const ComplexField& field, double s, Homogeneity h);

/// Same, from precomputed spectral coefficients on `grid`.
[[nodiscard]] double sobolev_norm_from_spectrum(const Grid1D& grid,
                                                std::span<const cplx> coefficients, double s,
                                                Homogeneity h);

/// L2 norm evaluated on the spectral side.
[[nodiscard]] double spectral_l2_norm(const ComplexField& field);

/// ||P_{|k| > k_nyq/2} u||_2 / ||u||_2 (sharp cutoff); 0 for the zero field.
[[nodiscard]] double tail_indicator(const ComplexField& field);
[[nodiscard]] double tail_indicator_from_spectrum(const Grid1D& grid,
                                                  std::span<const cplx> coefficients);

/// ||u||_{L2(|x - c| > L/4)} / ||u||_2 with c the grid centre; 0 for the zero field.
[[nodiscard]] double boundary_indicator(const ComplexField& field);

}  // namespace nlslab
