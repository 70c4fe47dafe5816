#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "nlslab/field.hpp"

namespace nlslab {

/// The Bernstein-type inequalities for Littlewood-Paley pieces, in a fixed order.
enum class BernsteinFamily : std::size_t {
  high_frequency = 0,     ///< ||P_>=N f||_p <= C N^{-s} || |grad|^s P_>=N f ||_p
  low_frequency_derivative,  ///< || |grad|^s P_<=N f ||_p <= C N^s ||P_<=N f||_p
  band_derivative_plus,   ///< || |grad|^s P_N f ||_p ~ N^s ||P_N f||_p
  band_derivative_minus,  ///< || |grad|^-s P_N f ||_p ~ N^-s ||P_N f||_p
  low_frequency_lq,       ///< ||P_<=N f||_q <= C N^{1/p-1/q} ||P_<=N f||_p
  band_lq,                ///< ||P_N f||_q <= C N^{1/p-1/q} ||P_N f||_p
};

inline constexpr std::size_t kBernsteinFamilies = 6;

[[nodiscard]] std::string_view to_string(BernsteinFamily f) noexcept;

struct BernsteinReport {
  double N = 0.0;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  /// LHS/RHS per family; nullopt marks a 0/0 case that is skipped.
  std::array<std::optional<double>, kBernsteinFamilies> ratios{};
  std::string bump;

  [[nodiscard]] const std::optional<double>& ratio(BernsteinFamily f) const {
    return ratios[static_cast<std::size_t>(f)];
  }
};

/// Evaluate both sides of every inequality. Requires 1 <= p <= q <= inf and s > 0.
/// P_>=N is realized as P_>N (multiplier 1 - phi(|k|/N)).
[[nodiscard]] BernsteinReport bernstein_audit(const ComplexField& field, double N, double s,
                                              double p, double q);

}  // namespace nlslab
