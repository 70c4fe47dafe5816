#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using cplx = std::complex<double>;

/// Samples of u(t, .) on a periodic grid, stamped with simulation time.
///
/// Values are immutable once constructed; operations return new fields.
class ComplexField {
 public:
  /// Throws NumericalError if any sample is NaN or infinite.
  ComplexField(Grid1D grid, std::vector<cplx> samples, double time = 0.0);

  [[nodiscard]] static ComplexField zeros(const Grid1D& grid, double time = 0.0);
  [[nodiscard]] static ComplexField from_function(const Grid1D& grid,
                                                  const std::function<cplx(double)>& f,
                                                  double time = 0.0);

  [[nodiscard]] const Grid1D& grid() const noexcept { return grid_; }
  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] std::span<const cplx> samples() const noexcept { return samples_; }
  [[nodiscard]] const cplx& operator[](std::size_t i) const noexcept { return samples_[i]; }

  [[nodiscard]] ComplexField with_time(double t) const;
  [[nodiscard]] ComplexField scaled(cplx factor) const;
  [[nodiscard]] ComplexField conjugated() const;

  /// Pointwise a*this + b*other on the same grid; time stamp of this.
  [[nodiscard]] ComplexField combine(cplx a, const ComplexField& other, cplx b) const;

 private:
  Grid1D grid_;
  std::vector<cplx> samples_;
  double time_;
};

[[nodiscard]] bool all_finite(std::span<const cplx> values) noexcept;

/// max_i |a_i - b_i|.
[[nodiscard]] double max_abs_difference(const ComplexField& a, const ComplexField& b);

}  // namespace nlslab
