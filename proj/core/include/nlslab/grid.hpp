#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace nlslab {

/// Periodic grid on [-L/2, L/2) with n points.
///
/// Mode ordering is DC-first (the standard DFT layout): spectral index j maps to the
/// integer mode m = j for j < n/2 and m = j - n otherwise, with angular wavenumber
/// k = 2*pi*m/L. The Nyquist index j = n/2 therefore carries k = -pi*n/L.
class Grid1D {
 public:
  Grid1D(double length, std::size_t n);

  [[nodiscard]] double length() const noexcept { return length_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double dx() const noexcept { return length_ / static_cast<double>(n_); }

  [[nodiscard]] double x(std::size_t i) const noexcept {
    return -0.5 * length_ + static_cast<double>(i) * dx();
  }

  /// Signed integer mode number of spectral index j.
  [[nodiscard]] long mode(std::size_t j) const noexcept {
    const auto n = static_cast<long>(n_);
    const auto jj = static_cast<long>(j);
    return jj < n / 2 ? jj : jj - n;
  }

  [[nodiscard]] double wavenumber(std::size_t j) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(mode(j)) / length_;
  }

  [[nodiscard]] std::vector<double> wavenumbers() const;
  [[nodiscard]] std::vector<double> points() const;

  /// Largest |k| on the grid, pi*n/L.
  [[nodiscard]] double nyquist() const noexcept {
    return std::numbers::pi * static_cast<double>(n_) / length_;
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double length_;
  std::size_t n_;
};

[[nodiscard]] bool is_power_of_two(std::size_t n) noexcept;

/// Validating factory; throws ConfigError for non-positive L or n not a power of two >= 16.
[[nodiscard]] Grid1D make_grid(double length, std::size_t n);

}  // namespace nlslab
