#include "ge/rational.hpp"

#include <cctype>
#include <charconv>

namespace ge {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_ll = [](std::string_view s, long long& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  auto slash = text.find('/');
  long long num = 0;
  long long den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(text, num)) return std::nullopt;
  } else {
    if (!parse_ll(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_ll(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

}  // namespace ge
