#include "nlslab/field.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"

namespace nlslab {

bool all_finite(std::span<const cplx> values) noexcept {
  return std::all_of(values.begin(), values.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexField::ComplexField(Grid1D grid, std::vector<cplx> samples, double time)
    : grid_(grid), samples_(std::move(samples)), time_(time) {
  if (samples_.size() != grid_.size()) {
    throw ConfigError("field sample count does not match grid size");
  }
  if (!all_finite(samples_)) {
    throw NumericalError("field contains non-finite samples at t = " + std::to_string(time));
  }
}

ComplexField ComplexField::zeros(const Grid1D& grid, double time) {
  return ComplexField(grid, std::vector<cplx>(grid.size()), time);
}

ComplexField ComplexField::from_function(const Grid1D& grid, const std::function<cplx(double)>& f,
                                         double time) {
  std::vector<cplx> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(grid.x(i));
  return ComplexField(grid, std::move(s), time);
}

ComplexField ComplexField::with_time(double t) const { return ComplexField(grid_, samples_, t); }

ComplexField ComplexField::scaled(cplx factor) const {
  std::vector<cplx> s(samples_);
  for (auto& z : s) z *= factor;
  return ComplexField(grid_, std::move(s), time_);
}

ComplexField ComplexField::conjugated() const {
  std::vector<cplx> s(samples_);
  for (auto& z : s) z = std::conj(z);
  return ComplexField(grid_, std::move(s), time_);
}

ComplexField ComplexField::combine(cplx a, const ComplexField& other, cplx b) const {
  if (!(other.grid_ == grid_)) throw ConfigError("combine: fields live on different grids");
  std::vector<cplx> s(samples_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a * samples_[i] + b * other.samples_[i];
  return ComplexField(grid_, std::move(s), time_);
}

double max_abs_difference(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("max_abs_difference: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace nlslab
