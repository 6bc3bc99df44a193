#pragma once

// Exact rational arithmetic for the piecewise-linear construction, backed by
// boost::multiprecision::cpp_rational (arbitrary precision, always reduced,
// positive denominator). Fractions serialize as "p/q" ("p" when q == 1).

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace freediff {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or "p" with integer p, q. Decimal notation is rejected so
/// exact-path flags stay exact.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.find('.') != std::string::npos)
    throw std::invalid_argument("decimal notation rejected, use p/q: " + s);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational: " + s);
  }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace freediff
