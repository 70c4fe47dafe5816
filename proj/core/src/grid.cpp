#include "nlslab/grid.hpp"

#include <cmath>
#include <string>

#include "nlslab/error.hpp"

namespace nlslab {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

Grid1D::Grid1D(double length, std::size_t n) : length_(length), n_(n) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite (got " + std::to_string(length) +
                      ")");
  }
  if (!is_power_of_two(n) || n < 16) {
    throw ConfigError("grid point count must be a power of two >= 16 (got " + std::to_string(n) +
                      ")");
  }
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> k(n_);
  for (std::size_t j = 0; j < n_; ++j) k[j] = wavenumber(j);
  return k;
}

std::vector<double> Grid1D::points() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

Grid1D make_grid(double length, std::size_t n) { return Grid1D(length, n); }

}  // namespace nlslab
