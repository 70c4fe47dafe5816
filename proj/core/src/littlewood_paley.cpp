#include "nlslab/littlewood_paley.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"

namespace nlslab {

double lp_bump(double rho) noexcept {
  rho = std::abs(rho);
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * (rho - 1.0));
  return c * c;
}

double lp_multiplier(double k, double N, LpMode mode) noexcept {
  const double rho = std::abs(k) / N;
  switch (mode) {
    case LpMode::leq:
      return lp_bump(rho);
    case LpMode::gt:
      return 1.0 - lp_bump(rho);
    case LpMode::at:
      return lp_bump(rho) - lp_bump(2.0 * rho);
  }
  return 0.0;
}

SymbolSpec lp_symbol(double N, LpMode mode) {
  if (!(N > 0.0)) throw ConfigError("Littlewood-Paley threshold N must be positive");
  return SymbolSpec::real([N, mode](double k) { return lp_multiplier(k, N, mode); }, "P_N");
}

ComplexField lp_project(const ComplexField& field, double N, LpMode mode) {
  return apply_symbol(field, lp_symbol(N, mode));
}

}  // namespace nlslab
