#pragma once

#include "cousinlab/interval.hpp"
#include "cousinlab/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cousinlab {

// Dense univariate polynomial over Q, coefficients low degree first.
// The zero polynomial has no coefficients and degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly monomial(const Rational& c, int deg);
    static Poly x() { return monomial(1, 1); }
    static Poly from_integers(const std::vector<long>& coeffs);
    static Poly from_bigints(const std::vector<Integer>& coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& lc() const { return c_.back(); }
    Rational coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Euclidean division: *this = q*b + r with deg r < deg b.
    std::pair<Poly, Poly> divmod(const Poly& b) const;
    Poly operator%(const Poly& b) const { return divmod(b).second; }
    Poly operator/(const Poly& b) const { return divmod(b).first; }

    Poly derivative() const;
    Poly monic() const;
    // p(q(x))
    Poly compose(const Poly& q) const;
    // p(-x), x^deg p(1/x), c^deg p(x/c) style helpers
    Poly negate_var() const;
    Poly reversed() const;
    Poly shift(const Rational& r) const; // p(x + r)
    Poly squarefree() const;
    // Integer polynomial with content 1 and positive leading coefficient,
    // proportional to *this.
    Poly primitive() const;
    bool has_integer_coeffs() const;
    std::vector<Integer> integer_coeffs() const; // requires has_integer_coeffs()
    // Largest k with x^k | p, and p / x^k.
    std::pair<int, Poly> strip_zero_roots() const;

    Rational eval(const Rational& x) const;
    Interval eval(const Interval& x) const;
    ComplexInterval eval(const ComplexInterval& z) const;

    // Every complex root z satisfies |z| < cauchy_bound().
    Rational cauchy_bound() const;
    // For p(0) != 0: every root z satisfies |z| >= root_lower_bound() > 0.
    Rational root_lower_bound() const;

    std::string to_string(const char* var = "x") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

Poly gcd(const Poly& a, const Poly& b); // monic, gcd(0,0) = 0
// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
struct Bezout {
    Poly g, s, t;
};
Bezout ext_gcd(const Poly& a, const Poly& b);

Rational resultant(const Poly& a, const Poly& b);

// Polynomials whose roots are {a + b} and {a * b} over roots a of p and b of q
// (with multiplicity), built as exact resultants. Zero roots are handled by
// the caller for products: both p(0), q(0) must be nonzero.
Poly root_sum_poly(const Poly& p, const Poly& q);
Poly root_product_poly(const Poly& p, const Poly& q);

// Exact interpolation through (xs[i], ys[i]) with distinct xs.
Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

class SturmSequence {
  public:
    explicit SturmSequence(const Poly& p);
    // Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const;
    int count_all() const;

  private:
    int variations(const Rational& x) const;
    int variations_at_infinity(bool positive) const;
    std::vector<Poly> seq_;
};

} // namespace cousinlab
