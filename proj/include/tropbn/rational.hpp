#pragma once

// Exact rational scalars shared across the library.  All geometric
// quantities (edge lengths, offsets, function values, coefficients) are
// mpq_class; slopes of piecewise linear functions are plain integers.

#include <gmpxx.h>

#include <string>

#include "json.hpp"

namespace tropbn {

using Rational = mpq_class;
using Integer = mpz_class;
using json = nlohmann::json;

// Parses "p", "-p", or "p/q" (q > 0 after reduction).  Throws
// std::invalid_argument on malformed input or zero denominator.
Rational rational_from_string(const std::string& s);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" reduced.
std::string rational_to_string(const Rational& q);

inline json rational_to_json(const Rational& q) { return rational_to_string(q); }

Rational rational_from_json(const json& j);

// a^e for integer e (e < 0 requires a != 0).
Rational rational_pow(const Rational& a, long e);

// Representative of q modulo p in [0, p), p > 0.
Rational rational_mod(const Rational& q, const Rational& p);

// n/d in lowest terms.  The two-argument mpq_class constructor keeps the
// fraction as given, and GMP comparisons assume canonical form, so raw
// quotients must pass through here (or canonicalize()) before use.
Rational rational_ratio(const Integer& n, const Integer& d);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

}  // namespace tropbn
