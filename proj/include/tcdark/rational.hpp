#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace tcdark {

// Exact arithmetic everywhere the structure theory needs a rank or a kernel.
// Floating point only enters for Hamiltonian dynamics and cross-checks.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// "p/q" with the denominator omitted when it is 1.
std::string fraction_str(const Rational& r);

// Accepts "p", "-p", "p/q"; throws std::invalid_argument on anything else
// (including q == 0).
Rational parse_fraction(std::string_view s);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tcdark
