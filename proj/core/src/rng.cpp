#include "nlslab/rng.hpp"

#include <cmath>
#include <numbers>

namespace nlslab {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::operator()(Counter c) const noexcept {
  Key k = key_;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

Philox4x32::Counter Philox4x32::block(std::uint64_t hi, std::uint64_t lo) const noexcept {
  return (*this)({static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32),
                  static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)});
}

double uniform_open(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

cplx complex_normal(std::uint64_t seed, std::uint64_t stream, std::int64_t index) {
  const auto b = Philox4x32(seed).block(stream, static_cast<std::uint64_t>(index));
  const double u1 = uniform_open(b[0], b[1]);
  const double u2 = uniform_open(b[2], b[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

PhiloxEngine::result_type PhiloxEngine::operator()() {
  if (used_ == 4) {
    buf_ = gen_.block(stream_, counter_++);
    used_ = 0;
  }
  return buf_[static_cast<std::size_t>(used_++)];
}

double PhiloxEngine::uniform() {
  const auto hi = (*this)();
  return uniform_open(hi, (*this)());
}

}  // namespace nlslab
