#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace fgl {

// All exact measure arithmetic runs on arbitrary-precision rationals.
// Floats appear only in Monte Carlo estimators and metric geometry.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// 3^k for any integer k (negative k gives 1/3^|k|).
inline Rat pow3(int k) {
  Int p = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= 3;
  return k >= 0 ? Rat(p) : Rat(Int(1), p);
}

// "p/q" with q > 0, or a bare integer "p".
inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

inline std::optional<Rat> parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto parse_int = [](std::string_view s, Int& out) -> bool {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') return false;
    out = Int(std::string(s));
    return true;
  };
  Int num, den = 1;
  if (!parse_int(text.substr(0, slash), num)) return std::nullopt;
  if (slash != std::string_view::npos) {
    if (!parse_int(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rat(num, den);
}

}  // namespace fgl
