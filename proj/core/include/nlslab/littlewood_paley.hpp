#pragma once

#include <string_view>

#include "nlslab/field.hpp"
#include "nlslab/symbol.hpp"

namespace nlslab {

/// The Littlewood-Paley bump: 1 on [0,1], cos^2(pi (rho-1)/2) on (1,2), 0 on [2, inf).
[[nodiscard]] double lp_bump(double rho) noexcept;

/// Human-readable description of lp_bump, recorded in audit reports.
inline constexpr std::string_view kLpBumpDescription =
    "phi(rho) = 1 (rho<=1), cos^2(pi(rho-1)/2) (1<rho<2), 0 (rho>=2)";

enum class LpMode {
  at,   ///< P_N:   phi(|k|/N) - phi(2|k|/N)
  leq,  ///< P_<=N: phi(|k|/N)
  gt,   ///< P_>N:  1 - phi(|k|/N)
};

[[nodiscard]] double lp_multiplier(double k, double N, LpMode mode) noexcept;
[[nodiscard]] SymbolSpec lp_symbol(double N, LpMode mode);

/// Throws ConfigError when N <= 0.
[[nodiscard]] ComplexField lp_project(const ComplexField& field, double N, LpMode mode);

}  // namespace nlslab
