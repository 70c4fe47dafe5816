#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"

namespace test {

using nlslab::cplx;

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline nlslab::ComplexField gaussian(const nlslab::Grid1D& g, double a = 1.0, double x0 = 0.0,
                                     double v = 0.0) {
  return nlslab::ComplexField::from_function(g, [=](double x) {
    return a * std::exp(-(x - x0) * (x - x0)) * std::polar(1.0, v * x);
  });
}

/// A e^{i k x} with k = 2 pi m / L.
inline nlslab::ComplexField plane_wave(const nlslab::Grid1D& g, long m, cplx a = 1.0) {
  const double k = 2.0 * std::numbers::pi * static_cast<double>(m) / g.length();
  return nlslab::ComplexField::from_function(g, [=](double x) { return a * std::polar(1.0, k * x); });
}

inline nlslab::ComplexField constant(const nlslab::Grid1D& g, cplx c) {
  return nlslab::ComplexField::from_function(g, [=](double) { return c; });
}

/// Counter-propagating boosted Gaussians; a single boosted packet has zero interaction action.
inline nlslab::ComplexField boosted_pair(const nlslab::Grid1D& g, double v, double sep = 6.0) {
  return nlslab::ComplexField::from_function(g, [=](double x) {
    const double l = x + sep / 2, r = x - sep / 2;
    return std::exp(-l * l) * std::polar(1.0, v * x) + std::exp(-r * r) * std::polar(1.0, -v * x);
  });
}

}  // namespace test
