#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/symbol.hpp"

namespace nlslab {

double lebesgue_integral(const ComplexField& field, double r) {
  if (!(r >= 1.0) || std::isinf(r)) throw ConfigError("lebesgue_integral: need finite r >= 1");
  double sum = 0.0;
  for (const auto& z : field.samples()) {
    const double a = std::abs(z);
    sum += (r == 2.0) ? a * a : std::pow(a, r);
  }
  return sum * field.grid().dx();
}

double lebesgue_norm(const ComplexField& field, double r) {
  if (!(r >= 1.0)) throw ConfigError("lebesgue_norm: exponent must satisfy r >= 1");
  if (std::isinf(r)) {
    double m = 0.0;
    for (const auto& z : field.samples()) m = std::max(m, std::abs(z));
    return m;
  }
  const double integral = lebesgue_integral(field, r);
  return r == 2.0 ? std::sqrt(integral) : std::pow(integral, 1.0 / r);
}

double sobolev_norm_from_spectrum(const Grid1D& grid, std::span<const cplx> c, double s,
                                  Homogeneity h) {
  const double n = static_cast<double>(grid.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid.wavenumber(j);
    const double a2 = std::norm(c[j]);
    if (a2 == 0.0) continue;
    double w2;
    if (h == Homogeneity::homogeneous) {
      if (k == 0.0 && s < 0.0) {
        throw ConfigError("homogeneous Sobolev norm with s < 0 requires zero mean");
      }
      w2 = abs_power(k, 2.0 * s);
    } else {
      w2 = std::pow(1.0 + k * k, s);
    }
    sum += w2 * a2;
  }
  return std::sqrt(sum * grid.length() / (n * n));
}

double sobolev_norm(const ComplexField& field, double s, Homogeneity h) {
  const auto c = fft::spectrum(field);
  return sobolev_norm_from_spectrum(field.grid(), c, s, h);
}

double spectral_l2_norm(const ComplexField& field) {
  return sobolev_norm(field, 0.0, Homogeneity::homogeneous);
}

double tail_indicator_from_spectrum(const Grid1D& grid, std::span<const cplx> c) {
  const double cut = 0.5 * grid.nyquist();
  double total = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double a2 = std::norm(c[j]);
    total += a2;
    if (std::abs(grid.wavenumber(j)) > cut) tail += a2;
  }
  return total > 0.0 ? std::sqrt(tail / total) : 0.0;
}

double tail_indicator(const ComplexField& field) {
  const auto c = fft::spectrum(field);
  return tail_indicator_from_spectrum(field.grid(), c);
}

double boundary_indicator(const ComplexField& field) {
  const auto& grid = field.grid();
  const double quarter = 0.25 * grid.length();
  double total = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double a2 = std::norm(field[i]);
    total += a2;
    if (std::abs(grid.x(i)) > quarter) outside += a2;
  }
  return total > 0.0 ? std::sqrt(outside / total) : 0.0;
}

}  // namespace nlslab
