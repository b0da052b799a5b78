#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyrank/errors.hpp"

namespace polyrank {

using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline Rational rational_pow(std::uint64_t base, long exp) {
  BigInt b = big_pow(BigInt(base), static_cast<unsigned>(exp < 0 ? -exp : exp));
  return exp < 0 ? Rational(BigInt(1), b) : Rational(b);
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace polyrank
