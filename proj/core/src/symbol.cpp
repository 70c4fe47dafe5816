#include "nlslab/symbol.hpp"

#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"

namespace nlslab {

SymbolSpec::SymbolSpec(Evaluator evaluator, std::optional<double> order, std::string name)
    : evaluator_(std::move(evaluator)), order_(order), name_(std::move(name)) {
  if (!evaluator_) throw ConfigError("SymbolSpec requires an evaluator");
}

SymbolSpec SymbolSpec::operator*(const SymbolSpec& other) const {
  std::optional<double> order;
  if (order_ && other.order_) order = *order_ + *other.order_;
  return SymbolSpec([a = evaluator_, b = other.evaluator_](double k) { return a(k) * b(k); },
                    order, name_ + "*" + other.name_);
}

SymbolSpec SymbolSpec::identity() {
  return SymbolSpec([](double) { return cplx(1.0, 0.0); }, 0.0, "1");
}

SymbolSpec SymbolSpec::real(std::function<double(double)> f, std::string name) {
  return SymbolSpec([f = std::move(f)](double k) { return cplx(f(k), 0.0); }, std::nullopt,
                    std::move(name));
}

double abs_power(double k, double s) noexcept {
  const double a = std::abs(k);
  if (a == 0.0) {
    if (s == 0.0) return 1.0;
    return s > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::pow(a, s);
}

SymbolSpec SymbolSpec::abs_power(double s) {
  return SymbolSpec([s](double k) { return cplx(nlslab::abs_power(k, s), 0.0); }, s,
                    "|k|^" + std::to_string(s));
}

SymbolSpec SymbolSpec::bracket_power(double s) {
  return SymbolSpec([s](double k) { return cplx(std::pow(1.0 + k * k, 0.5 * s), 0.0); }, s,
                    "<k>^" + std::to_string(s));
}

SymbolSpec SymbolSpec::derivative() {
  return SymbolSpec([](double k) { return cplx(0.0, k); }, 1.0, "ik");
}

SymbolSpec SymbolSpec::free_phase(double t) {
  return SymbolSpec([t](double k) { return std::polar(1.0, -t * k * k); }, std::nullopt,
                    "exp(-itk^2)");
}

ComplexField apply_symbol(const ComplexField& field, const SymbolSpec& symbol) {
  const auto& grid = field.grid();
  auto c = fft::spectrum(field);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const cplx m = symbol(grid.wavenumber(j));
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
      throw NumericalError("symbol " + symbol.name() + " is not finite at k = " +
                           std::to_string(grid.wavenumber(j)));
    }
    c[j] *= m;
  }
  return fft::from_spectrum(grid, std::move(c), field.time());
}

}  // namespace nlslab
