#pragma once

#include <compare>
#include <cstdint>

namespace evoman {

/// Signed 24.8 fixed-point scalar measured in pixels.
///
/// All simulation arithmetic is done on `raw`; conversion to double is only
/// for sensors, wire output and display. Division truncates toward zero and
/// every operation commutes with negation.
struct Fixed {
  static constexpr int kFracBits = 8;
  static constexpr std::int32_t kOne = 1 << kFracBits;

  std::int32_t raw = 0;

  static constexpr Fixed from_raw(std::int32_t r) { return Fixed{r}; }
  static constexpr Fixed from_px(std::int32_t px) { return Fixed{px * kOne}; }

  constexpr double to_px() const { return static_cast<double>(raw) / kOne; }

  constexpr Fixed operator-() const { return Fixed{-raw}; }
  constexpr Fixed operator+(Fixed o) const { return Fixed{raw + o.raw}; }
  constexpr Fixed operator-(Fixed o) const { return Fixed{raw - o.raw}; }
  constexpr Fixed operator*(std::int32_t k) const { return Fixed{raw * k}; }
  constexpr Fixed operator/(std::int32_t k) const { return Fixed{raw / k}; }
  constexpr Fixed& operator+=(Fixed o) {
    raw += o.raw;
    return *this;
  }
  constexpr Fixed& operator-=(Fixed o) {
    raw -= o.raw;
    return *this;
  }

  constexpr auto operator<=>(const Fixed&) const = default;
};

constexpr Fixed operator*(std::int32_t k, Fixed f) { return f * k; }

constexpr Fixed abs(Fixed f) { return f.raw < 0 ? -f : f; }

constexpr Fixed clamp(Fixed v, Fixed lo, Fixed hi) {
  return v < lo ? lo : (hi < v ? hi : v);
}

/// -1, 0 or +1.
constexpr int sign(Fixed f) { return (f.raw > 0) - (f.raw < 0); }

/// Scales `v` by num/den with 64-bit intermediate, truncating toward zero.
constexpr Fixed scale(Fixed v, std::int64_t num, std::int64_t den) {
  return Fixed{static_cast<std::int32_t>(static_cast<std::int64_t>(v.raw) * num / den)};
}

/// floor(sqrt(n)) for n >= 0, integer only.
constexpr std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  std::uint64_t x = n;
  std::uint64_t y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

}  // namespace evoman
