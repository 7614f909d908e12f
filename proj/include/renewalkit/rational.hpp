#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace renewalkit {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Largest integer <= r.
inline Int rat_floor(const Rational& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline Rational rat_frac(const Rational& r) { return r - Rational(rat_floor(r)); }

inline double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

// Parses "p", "p/q", or a plain decimal like "-1.25".
Rational parse_rational(const std::string& s);

std::string to_string(const Rational& r);
std::string to_string(const Int& n);

// Exact rational from a double that is meant to denote a short decimal
// (e.g. model parameters written as 0.4 or 1.5). Scans denominators
// 10^k, k <= max_digits, and small fractions; throws if nothing matches.
Rational rational_from_decimal(double x, int max_digits = 9);

}  // namespace renewalkit
