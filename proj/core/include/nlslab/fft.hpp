#pragma once

#include <span>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab::fft {

// Forward transform is unnormalized: c_j = sum_m u_m exp(-2 pi i j m / n).
// Inverse divides by n, so inverse(forward(u)) == u.
void forward_inplace(std::span<cplx> data);
void inverse_inplace(std::span<cplx> data);

[[nodiscard]] std::vector<cplx> forward(std::span<const cplx> data);
[[nodiscard]] std::vector<cplx> inverse(std::span<const cplx> data);

/// Spectral coefficients of a field (DC-first, unnormalized).
[[nodiscard]] std::vector<cplx> spectrum(const ComplexField& field);

/// Field on `grid` whose spectral coefficients are `coefficients`.
[[nodiscard]] ComplexField from_spectrum(const Grid1D& grid, std::vector<cplx> coefficients,
                                         double time);

/// Band-limited interpolation onto a grid with more points over the same period.
/// The Nyquist coefficient is split evenly between +/- Nyquist of the finer grid.
[[nodiscard]] std::vector<cplx> upsample(std::span<const cplx> samples, std::size_t n_out);

/// Evaluate the trigonometric interpolant (and optionally its derivative) at arbitrary
/// points. Nyquist mode is symmetrized as in `upsample`.
struct PointValues {
  std::vector<cplx> value;
  std::vector<cplx> derivative;
};
[[nodiscard]] PointValues evaluate_at(const ComplexField& field, std::span<const double> xs);

}  // namespace nlslab::fft
