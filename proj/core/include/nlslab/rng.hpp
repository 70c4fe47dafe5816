#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "nlslab/field.hpp"

namespace nlslab {

/// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC11).
/// Counter-based: output is a pure function of (key, counter), so streams are portable
/// and can be indexed directly.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(Key key) : key_(key) {}
  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  [[nodiscard]] Counter operator()(Counter ctr) const noexcept;
  /// Block at counter (lo, lo >> 32, hi, hi >> 32).
  [[nodiscard]] Counter block(std::uint64_t hi, std::uint64_t lo) const noexcept;

 private:
  Key key_;
};

/// Uniform in (0, 1) from 53 bits of two words.
[[nodiscard]] double uniform_open(std::uint32_t hi, std::uint32_t lo) noexcept;

/// Standard complex normal (independent N(0,1) real and imaginary parts) addressed by
/// (seed, stream, index); Box-Muller on one Philox block.
[[nodiscard]] cplx complex_normal(std::uint64_t seed, std::uint64_t stream, std::int64_t index);

/// Sequential UniformRandomBitGenerator over one Philox stream.
class PhiloxEngine {
 public:
  using result_type = std::uint32_t;
  explicit PhiloxEngine(std::uint64_t seed, std::uint64_t stream = 0)
      : gen_(seed), stream_(stream) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  /// Uniform double in (0, 1).
  double uniform();

 private:
  Philox4x32 gen_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Counter buf_{};
  int used_ = 4;
};

}  // namespace nlslab
