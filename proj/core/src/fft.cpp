#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "nlslab/error.hpp"

namespace nlslab::fft {
namespace {

// FFTW planning is not thread-safe; execution through the new-array interface is.
// Plans are created once per size with FFTW_ESTIMATE, which makes them deterministic.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    const int ni = static_cast<int>(n);
    constexpr unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_1d(ni, buf, buf, FFTW_FORWARD, flags),
               fftw_plan_dft_1d(ni, buf, buf, FFTW_BACKWARD, flags)};
    fftw_free(buf);
    if (p.forward == nullptr || p.backward == nullptr) {
      throw NumericalError("FFTW failed to create a plan of size " + std::to_string(n));
    }
    plans_.emplace(n, p);
    return p;
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

fftw_complex* as_fftw(std::span<cplx> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

void forward_inplace(std::span<cplx> data) {
  const auto plan = PlanCache::instance().get(data.size()).forward;
  fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
}

void inverse_inplace(std::span<cplx> data) {
  const auto plan = PlanCache::instance().get(data.size()).backward;
  fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= inv_n;
}

std::vector<cplx> forward(std::span<const cplx> data) {
  std::vector<cplx> out(data.begin(), data.end());
  forward_inplace(out);
  return out;
}

std::vector<cplx> inverse(std::span<const cplx> data) {
  std::vector<cplx> out(data.begin(), data.end());
  inverse_inplace(out);
  return out;
}

std::vector<cplx> spectrum(const ComplexField& field) { return forward(field.samples()); }

ComplexField from_spectrum(const Grid1D& grid, std::vector<cplx> coefficients, double time) {
  inverse_inplace(coefficients);
  return ComplexField(grid, std::move(coefficients), time);
}

std::vector<cplx> upsample(std::span<const cplx> samples, std::size_t n_out) {
  const std::size_t n = samples.size();
  if (n_out < n) throw ConfigError("upsample: target size smaller than source");
  if (n_out == n) return {samples.begin(), samples.end()};
  auto c = forward(samples);
  std::vector<cplx> padded(n_out);
  const std::size_t half = n / 2;
  for (std::size_t j = 0; j < half; ++j) padded[j] = c[j];
  for (std::size_t j = half + 1; j < n; ++j) padded[n_out - n + j] = c[j];
  padded[half] = 0.5 * c[half];
  padded[n_out - half] = 0.5 * c[half];
  const double scale = static_cast<double>(n_out) / static_cast<double>(n);
  for (auto& z : padded) z *= scale;
  inverse_inplace(padded);
  return padded;
}

PointValues evaluate_at(const ComplexField& field, std::span<const double> xs) {
  const auto& grid = field.grid();
  const std::size_t n = grid.size();
  auto c = spectrum(field);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double x0 = grid.x(0);
  const std::size_t half = n / 2;
  PointValues out{std::vector<cplx>(xs.size()), std::vector<cplx>(xs.size())};
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const double y = xs[p] - x0;
    cplx v{}, d{};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == half) continue;
      const double k = grid.wavenumber(j);
      const cplx e = std::polar(1.0, k * y);
      v += c[j] * e;
      d += cplx(0.0, k) * c[j] * e;
    }
    // Symmetrized Nyquist: 0.5*c*(e^{iKy} + e^{-iKy}) = c*cos(Ky).
    const double kn = grid.nyquist();
    v += c[half] * std::cos(kn * y);
    d += c[half] * (-kn * std::sin(kn * y));
    out.value[p] = v * inv_n;
    out.derivative[p] = d * inv_n;
  }
  return out;
}

}  // namespace nlslab::fft
