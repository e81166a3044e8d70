#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace disjlab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" rendering; integers are written as "p/1".
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Accepts "p/q", "p", or a plain decimal such as "0.25" or "-1.5e-3".
/// Decimals are converted exactly (0.1 becomes 1/10).
Rational parse_rational(std::string_view text);

/// 2^e exactly, for any integer e.
Rational pow2(long e);

Rational abs(const Rational& q);

double to_double(const Rational& q);

}  // namespace disjlab
