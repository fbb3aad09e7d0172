#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace bvp4 {

/// Shortest text that reads back to the same double ("nan"/"inf" spelled out).
inline std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace bvp4
