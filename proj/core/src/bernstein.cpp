#include "nlslab/bernstein.hpp"

#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/littlewood_paley.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/symbol.hpp"

namespace nlslab {

std::string_view to_string(BernsteinFamily f) noexcept {
  switch (f) {
    case BernsteinFamily::high_frequency: return "high_frequency";
    case BernsteinFamily::low_frequency_derivative: return "low_frequency_derivative";
    case BernsteinFamily::band_derivative_plus: return "band_derivative_plus";
    case BernsteinFamily::band_derivative_minus: return "band_derivative_minus";
    case BernsteinFamily::low_frequency_lq: return "low_frequency_lq";
    case BernsteinFamily::band_lq: return "band_lq";
  }
  return "?";
}

namespace {

// A projected piece whose L2 norm is below this fraction of the field's counts as zero,
// and every ratio built on it is reported as the 0/0 sentinel.
constexpr double kZeroFloor = 1e-12;

std::optional<double> safe_ratio(double num, double den, bool piece_vanishes) {
  if (piece_vanishes || den <= 0.0) return std::nullopt;
  return num / den;
}

}  // namespace

BernsteinReport bernstein_audit(const ComplexField& field, double N, double s, double p,
                                double q) {
  if (!(p >= 1.0) || !(q >= p)) throw ConfigError("bernstein_audit: need 1 <= p <= q");
  if (!(s > 0.0)) throw ConfigError("bernstein_audit: need s > 0");
  if (!(N > 0.0)) throw ConfigError("bernstein_audit: need N > 0");

  BernsteinReport rep;
  rep.N = N;
  rep.s = s;
  rep.p = p;
  rep.q = q;
  rep.bump = std::string(kLpBumpDescription);

  const double total = lebesgue_norm(field, 2.0);
  if (total == 0.0) return rep;

  const auto hi = lp_project(field, N, LpMode::gt);
  const auto lo = lp_project(field, N, LpMode::leq);
  const auto band = lp_project(field, N, LpMode::at);
  const bool hi0 = lebesgue_norm(hi, 2.0) <= kZeroFloor * total;
  const bool lo0 = lebesgue_norm(lo, 2.0) <= kZeroFloor * total;
  const bool band0 = lebesgue_norm(band, 2.0) <= kZeroFloor * total;
  const auto plus = SymbolSpec::abs_power(s);
  const double ns = std::pow(N, s);
  const double bern = std::pow(N, 1.0 / p - (std::isinf(q) ? 0.0 : 1.0 / q));

  auto set = [&rep](BernsteinFamily f, std::optional<double> v) {
    rep.ratios[static_cast<std::size_t>(f)] = v;
  };

  set(BernsteinFamily::high_frequency,
      safe_ratio(lebesgue_norm(hi, p), lebesgue_norm(apply_symbol(hi, plus), p) / ns, hi0));
  set(BernsteinFamily::low_frequency_derivative,
      safe_ratio(lebesgue_norm(apply_symbol(lo, plus), p), ns * lebesgue_norm(lo, p), lo0));
  const double band_p = lebesgue_norm(band, p);
  set(BernsteinFamily::band_derivative_plus,
      safe_ratio(lebesgue_norm(apply_symbol(band, plus), p), ns * band_p, band0));
  // P_N f has no DC component; the k = 0 entry of |k|^{-s} is never used.
  const auto minus = SymbolSpec::real(
      [s](double k) { return k == 0.0 ? 0.0 : std::pow(std::abs(k), -s); }, "|k|^-s");
  set(BernsteinFamily::band_derivative_minus,
      safe_ratio(lebesgue_norm(apply_symbol(band, minus), p), band_p / ns, band0));
  set(BernsteinFamily::low_frequency_lq,
      safe_ratio(lebesgue_norm(lo, q), bern * lebesgue_norm(lo, p), lo0));
  set(BernsteinFamily::band_lq, safe_ratio(lebesgue_norm(band, q), bern * band_p, band0));
  return rep;
}

}  // namespace nlslab
