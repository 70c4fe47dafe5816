#include "nlslab/initial_data.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/rng.hpp"

namespace nlslab {
namespace {

constexpr std::array<std::pair<DataFamily, std::string_view>, 4> kFamilies = {{
    {DataFamily::gaussian, "gaussian"},
    {DataFamily::boosted_gaussian, "boosted_gaussian"},
    {DataFamily::boosted_pair, "boosted_pair"},
    {DataFamily::random_band, "random_band"},
}};

cplx packet(double x, double a, double sigma, double x0, double v) {
  const double y = x - x0;
  const double env = a * std::exp(-(y * y) / (2.0 * sigma * sigma));
  if (v == 0.0) return env;
  return env * std::polar(1.0, v * x);
}

ComplexField random_band(const InitialDataSpec& spec, const Grid1D& grid) {
  if (spec.k_hi >= grid.nyquist()) {
    throw ConfigError("data.k_hi: band reaches the Nyquist wavenumber " +
                      std::to_string(grid.nyquist()) + "; increase grid.n");
  }
  std::vector<cplx> coeffs(grid.size(), cplx{});
  const double n = static_cast<double>(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.wavenumber(j);
    if (std::abs(k) < spec.k_lo || std::abs(k) > spec.k_hi) continue;
    const double shape = std::pow(1.0 + k * k, -0.5 * spec.s - 0.25);
    coeffs[j] = n * shape * complex_normal(spec.seed, 0, grid.mode(j));
  }
  auto f = fft::from_spectrum(grid, std::move(coeffs), 0.0);
  if (spec.envelope > 0.0) {
    std::vector<cplx> u(f.samples().begin(), f.samples().end());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= packet(grid.x(i), 1.0, spec.envelope, spec.center, 0.0);
    f = ComplexField(grid, std::move(u));
  }
  const double norm = sobolev_norm(f, spec.s, Homogeneity::inhomogeneous);
  if (norm == 0.0) throw ConfigError("data: band [k_lo, k_hi] contains no grid modes");
  return f.scaled(spec.norm / norm);
}

}  // namespace

std::string_view to_string(DataFamily f) noexcept {
  for (const auto& [fam, name] : kFamilies) {
    if (fam == f) return name;
  }
  return "unknown";
}

DataFamily parse_family(std::string_view name) {
  for (const auto& [fam, n] : kFamilies) {
    if (n == name) return fam;
  }
  throw ConfigError("data.family: unknown family '" + std::string(name) +
                    "' (expected gaussian, boosted_gaussian, boosted_pair or random_band)");
}

void InitialDataSpec::validate() const {
  if (!std::isfinite(amplitude)) throw ConfigError("data.amplitude: must be finite");
  if (!(width > 0.0)) throw ConfigError("data.width: must be positive");
  if (!std::isfinite(center)) throw ConfigError("data.center: must be finite");
  if (!std::isfinite(velocity)) throw ConfigError("data.velocity: must be finite");
  if (!(boundary_tolerance > 0.0)) throw ConfigError("data.boundary_tolerance: must be positive");
  if (family == DataFamily::boosted_pair && !(separation >= 0.0)) {
    throw ConfigError("data.separation: must be >= 0");
  }
  if (family == DataFamily::random_band) {
    if (!(k_lo >= 0.0)) throw ConfigError("data.k_lo: must be >= 0");
    if (!(k_hi >= k_lo)) throw ConfigError("data.k_hi: must be >= data.k_lo");
    if (!std::isfinite(s)) throw ConfigError("data.s: must be finite");
    if (!(norm > 0.0)) throw ConfigError("data.norm: must be positive");
    if (!(envelope >= 0.0)) throw ConfigError("data.envelope: must be >= 0");
  }
}

ComplexField generate_initial_data(const InitialDataSpec& spec, const Grid1D& grid) {
  spec.validate();
  ComplexField f = ComplexField::zeros(grid);
  switch (spec.family) {
    case DataFamily::gaussian:
      f = ComplexField::from_function(grid, [&](double x) {
        return packet(x, spec.amplitude, spec.width, spec.center, 0.0);
      });
      break;
    case DataFamily::boosted_gaussian:
      f = ComplexField::from_function(grid, [&](double x) {
        return packet(x, spec.amplitude, spec.width, spec.center, spec.velocity);
      });
      break;
    case DataFamily::boosted_pair: {
      const double h = 0.5 * spec.separation;
      f = ComplexField::from_function(grid, [&](double x) {
        return packet(x, spec.amplitude, spec.width, spec.center - h, spec.velocity) +
               packet(x, spec.amplitude, spec.width, spec.center + h, -spec.velocity);
      });
      break;
    }
    case DataFamily::random_band:
      f = random_band(spec, grid);
      if (spec.envelope == 0.0) return f;
      break;
  }
  const double b = boundary_indicator(f);
  if (b >= spec.boundary_tolerance) {
    std::ostringstream msg;
    msg << "data: boundary-mass indicator " << b << " exceeds " << spec.boundary_tolerance
        << "; increase grid.L (currently " << grid.length() << ")";
    throw ConfigError(msg.str());
  }
  return f;
}

}  // namespace nlslab
