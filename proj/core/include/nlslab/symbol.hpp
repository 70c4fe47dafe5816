#pragma once

#include <functional>
#include <optional>
#include <string>

#include "nlslab/field.hpp"

namespace nlslab {

/// A Fourier multiplier: a map from angular wavenumber k to a complex factor.
///
/// Convention: d/dx <-> ik, Laplacian <-> -k^2, |grad|^s <-> |k|^s. Powers of |k| use
/// |0|^0 = 1 and |0|^s = 0 for s > 0.
class SymbolSpec {
 public:
  using Evaluator = std::function<cplx(double)>;

  explicit SymbolSpec(Evaluator evaluator, std::optional<double> order = std::nullopt,
                      std::string name = {});

  [[nodiscard]] cplx operator()(double k) const { return evaluator_(k); }
  [[nodiscard]] const std::optional<double>& order() const noexcept { return order_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  /// Pointwise product of two symbols.
  [[nodiscard]] SymbolSpec operator*(const SymbolSpec& other) const;

  [[nodiscard]] static SymbolSpec identity();
  [[nodiscard]] static SymbolSpec real(std::function<double(double)> f, std::string name = {});
  /// |k|^s.
  [[nodiscard]] static SymbolSpec abs_power(double s);
  /// <k>^s = (1 + k^2)^{s/2}.
  [[nodiscard]] static SymbolSpec bracket_power(double s);
  /// ik.
  [[nodiscard]] static SymbolSpec derivative();
  /// exp(-i t k^2), the free Schrodinger propagator over time t.
  [[nodiscard]] static SymbolSpec free_phase(double t);

 private:
  Evaluator evaluator_;
  std::optional<double> order_;
  std::string name_;
};

/// |k|^s with the conventions above.
[[nodiscard]] double abs_power(double k, double s) noexcept;

/// Inverse DFT of symbol(k_j) * DFT(field)_j. Time stamp preserved.
/// Throws NumericalError if the symbol is not finite on some grid wavenumber.
[[nodiscard]] ComplexField apply_symbol(const ComplexField& field, const SymbolSpec& symbol);

}  // namespace nlslab
