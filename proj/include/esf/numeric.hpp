#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace esf {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
// 100 decimal digits; used where a rational has to be compared against e^x or log x.
using HighFloat = boost::multiprecision::cpp_bin_float_100;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// "p/q" when the denominator is not 1, otherwise the integer.
inline std::string to_string(const BigRational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const BigRational& v) {
  return static_cast<double>(HighFloat(boost::multiprecision::numerator(v)) /
                             HighFloat(boost::multiprecision::denominator(v)));
}

inline HighFloat to_high(const BigRational& v) {
  return HighFloat(boost::multiprecision::numerator(v)) /
         HighFloat(boost::multiprecision::denominator(v));
}

// Parses an exact literal: "7", "-3", "1/2". Decimal points are rejected.
inline BigRational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in rational literal '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw std::invalid_argument("not an exact rational literal: '" + std::string(text) + "'");
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return BigRational(parse_int(text.substr(0, slash)), den);
}

}  // namespace esf
