#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cousinlab {

using Integer = mpz_class;
using Rational = mpq_class; // gmpxx keeps numerator/denominator canonical

// Parses "p", "-p", "p/q". Decimal points and exponents are rejected: exact
// entries never come from floating literals.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
// Nearest integer, exact halves resolved toward the even neighbour.
Integer round_half_even(const Rational& q);

Integer binomial(unsigned long n, unsigned long k);

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// n/d in lowest terms (mpq_class leaves a two-argument fraction as given).
inline Rational ratio(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

} // namespace cousinlab
