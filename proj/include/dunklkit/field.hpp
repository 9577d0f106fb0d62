#pragma once

// Coefficient fields used throughout the library.
//
// Exact computations run over GMP rationals; the floating layer (dihedral
// groups with m not in {3,4,6}, reduced coordinates, numeric kernel tables)
// runs over double. Everything that is generic over the field goes through
// FieldTraits.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dunklkit {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

/// A complex kernel value with an error estimate and the method that produced it.
struct KernelValue {
  Complex value;
  double abs_error_estimate = 0;
  std::string method;
  int terms = 0;  // series terms used, when applicable
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "3", "-3/4", "0.25" or "1e-3" into an exact rational.
// Base-10 integer; a leading 0 would otherwise select octal.
inline Integer parse_decimal_integer(std::string digits) {
  const bool neg = !digits.empty() && digits.front() == '-';
  std::size_t start = (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) ? 1 : 0;
  std::size_t first = digits.find_first_not_of('0', start);
  std::string body = first == std::string::npos ? "0" : digits.substr(first);
  if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("invalid integer '" + digits + "'");
  Integer v(body);
  return neg ? Integer(-v) : v;
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Integer num = parse_decimal_integer(s.substr(0, slash));
      Integer den = parse_decimal_integer(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    // Decimal with optional exponent, converted exactly.
    bool neg = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    }
    std::string mant;
    long exp10 = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mant.push_back(c);
        any_digit = true;
        if (seen_dot) --exp10;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (c == 'e' || c == 'E') {
        exp10 += std::stol(s.substr(pos + 1));
        pos = s.size();
        break;
      } else {
        throw ParseError("invalid rational literal '" + s + "'");
      }
    }
    if (!any_digit) throw ParseError("invalid rational literal '" + s + "'");
    Rational r{parse_decimal_integer(mant)};
    Integer ten = 10;
    Integer scale = 1;
    for (long i = 0; i < std::labs(exp10); ++i) scale *= ten;
    r = exp10 >= 0 ? r * Rational(scale) : r / Rational(scale);
    return neg ? -r : r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("invalid rational literal '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Round-trippable decimal text.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational from_rational(const Rational& x) { return x; }
  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static double magnitude(const Rational& x) { return std::fabs(to_double(x)); }
  static std::string str(const Rational& x) { return to_string(x); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double from_rational(const Rational& x) { return x.convert_to<double>(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::fabs(x); }
  static std::string str(double x) { return format_double(x); }
};

template <class F>
concept Field = requires { FieldTraits<F>::exact; };

inline Rational factorial_q(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

inline Rational binomial_q(const Rational& top, int k) {
  // Generalized binomial coefficient, top may be any rational.
  if (k < 0) return Rational(0);
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * (top - i) / (i + 1);
  return r;
}

inline Rational pow_q(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace dunklkit
