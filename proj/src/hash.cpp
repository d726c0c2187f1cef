#include "evoman/hash.hpp"

#include <charconv>
#include <stdexcept>

namespace evoman {

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::uint64_t parse_hex64(std::string_view text) {
  std::uint64_t v = 0;
  if (text.size() != 16) throw std::invalid_argument("expected 16 hex digits, got '" + std::string(text) + "'");
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("malformed hex digest '" + std::string(text) + "'");
  return v;
}

}  // namespace evoman
