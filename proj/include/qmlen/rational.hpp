#ifndef QMLEN_RATIONAL_HPP
#define QMLEN_RATIONAL_HPP

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qmlen {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational &q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational &q) { return boost::multiprecision::denominator(q); }

/// num/den with any nonzero den. (Boost's two-argument constructor rejects
/// negative denominators.)
inline Rational make_rational(const Integer &num, const Integer &den) {
  if (den == 0) {
    throw domain_error("zero denominator");
  }
  return den < 0 ? Rational(Integer(-num), Integer(-den)) : Rational(num, den);
}

inline int sign(const Integer &x) { return x.sign(); }
inline int sign(const Rational &x) { return x.sign(); }

/// Largest integer <= q.
inline Integer floor(const Rational &q) {
  Integer num = numerator(q);
  Integer den = denominator(q);  // always positive
  Integer quot = num / den;      // truncates toward zero
  if (num < 0 && quot * den != num) {
    quot -= 1;
  }
  return quot;
}

/// Smallest integer >= q.
inline Integer ceil(const Rational &q) { return -floor(-q); }

/// Canonical exact rendering, always with a denominator: "7/1", "-1/3".
inline std::string to_fraction(const Rational &q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_fraction(const Integer &x) { return x.str() + "/1"; }

/// Approximate decimal rendering; callers must label it as approximate.
inline std::string to_decimal(const Rational &q, int digits = 6) {
  using boost::multiprecision::cpp_dec_float_50;
  cpp_dec_float_50 value = cpp_dec_float_50(numerator(q)) / cpp_dec_float_50(denominator(q));
  return value.str(digits, std::ios_base::fixed);
}

namespace detail {

inline Integer parse_integer_at(std::string_view text, std::size_t &pos, std::size_t offset) {
  std::size_t start = pos;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    ++pos;
  }
  std::size_t digits_begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos == digits_begin) {
    throw parse_error("expected integer", offset + pos);
  }
  std::string digits(text.substr(start, pos - start));
  if (digits[0] == '+') {
    digits.erase(0, 1);
  }
  return Integer(digits);
}

} // namespace detail

/// Parses "p/q" or "p". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  Integer num = detail::parse_integer_at(text, pos, 0);
  Integer den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = detail::parse_integer_at(text, pos, 0);
    if (den == 0) {
      throw parse_error("zero denominator", pos - 1);
    }
  }
  if (pos != text.size()) {
    throw parse_error("trailing characters in rational", pos);
  }
  return make_rational(num, den);
}

} // namespace qmlen

#endif // QMLEN_RATIONAL_HPP
