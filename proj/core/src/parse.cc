#include "lcbm/parse.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lcbm {

double parse_real(std::string_view text) {
  const std::string original(text);
  auto bad = [&]() {
    return std::invalid_argument("not a number: '" + original + "'");
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw bad();
  if (text.starts_with("2^")) {
    text.remove_prefix(2);
    if (text.starts_with("{") && text.ends_with("}")) {
      text = text.substr(1, text.size() - 2);
    }
    int exponent = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), exponent);
    if (ec != std::errc() || ptr != text.data() + text.size() ||
        exponent < -1000 || exponent > 1000) {
      throw bad();
    }
    return std::ldexp(1.0, exponent);
  }
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw bad();
  }
  return value;
}

}  // namespace lcbm
