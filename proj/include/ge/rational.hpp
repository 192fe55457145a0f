#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace ge {

// Exact rational arithmetic throughout; satisfaction values, thresholds and
// comb images are compared exactly, never through floating point.
using Rational = boost::rational<long long>;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

std::string to_string(const Rational& r);

// Accepts "n", "-n", "n/d". Returns nullopt on malformed input or d == 0.
std::optional<Rational> parse_rational(std::string_view text);

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept {
    std::size_t h = std::hash<long long>{}(r.numerator());
    h ^= std::hash<long long>{}(r.denominator()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace ge
