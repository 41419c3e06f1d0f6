#pragma once

#include "cousinlab/rational.hpp"

#include <mpfr.h>

#include <iosfwd>
#include <string>

namespace cousinlab {

// Working-precision schedule shared by every adaptive comparison: start at
// `start_bits`, double until decided, give up above `cap_bits`.
struct PrecisionPolicy {
    long start_bits = 256;
    long cap_bits = 1'000'000;

    static PrecisionPolicy& global();
};

// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
// lower endpoint down and the upper endpoint up, so the exact result of the
// real operation applied to any points of the operands lies inside.
class Interval {
  public:
    explicit Interval(long prec = 256);
    Interval(const Rational& q, long prec);
    Interval(const Rational& lo, const Rational& hi, long prec);
    Interval(long value, long prec);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval pi(long prec);
    // Hull of two intervals.
    static Interval hull(const Interval& a, const Interval& b);

    long precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    // Raw endpoint access for code that rounds by hand.
    mpfr_ptr lo_mut() { return lo_; }
    mpfr_ptr hi_mut() { return hi_; }

    Rational lo_rational() const;
    Rational hi_rational() const;
    Rational mid_rational() const;
    double lo_double() const;
    double hi_double() const;
    double mid_double() const;
    // Upper bound on hi - lo.
    double width_double() const;
    // Upper bound on log2(hi - lo); -inf style large negative for points.
    long width_log2() const;
    bool is_point() const;

    bool contains_zero() const;
    bool contains(const Rational& q) const;
    bool positive() const;    // lo > 0
    bool negative() const;    // hi < 0
    bool nonnegative() const; // lo >= 0
    // Certified strict comparisons: true only when every point of *this is
    // below every point of other.
    bool certainly_less(const Interval& other) const;
    bool certainly_less_equal(const Interval& other) const;
    // Relative width (hi-lo)/|lo| <= 2^-bits; zero-containing intervals fail
    // unless they are the point 0.
    bool relative_width_at_most(long bits) const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator-=(const Interval& b) { return *this = *this - b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }

    friend Interval sqr(const Interval& a);
    friend Interval sqrt(const Interval& a);
    friend Interval exp(const Interval& a);
    friend Interval log(const Interval& a);
    friend Interval sin(const Interval& a);
    friend Interval cos(const Interval& a);
    friend Interval abs(const Interval& a);
    friend Interval pow(const Interval& a, unsigned long e);
    friend Interval max(const Interval& a, const Interval& b);
    friend Interval min(const Interval& a, const Interval& b);

    std::string to_string(int digits = 20) const;

  private:
    void init(long prec);
    long prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

// Rectangle re + i*im in the complex plane.
struct ComplexInterval {
    Interval re;
    Interval im;

    explicit ComplexInterval(long prec = 256) : re(prec), im(prec) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    long precision() const { return re.precision() > im.precision() ? re.precision() : im.precision(); }
    ComplexInterval conj() const { return {re, -im}; }
    // |z|^2 and |z| as certified real intervals.
    Interval norm2() const { return sqr(re) + sqr(im); }
    Interval abs() const { return sqrt(norm2()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool excludes_zero() const { return !contains_zero(); }

    ComplexInterval operator-() const { return {-re, -im}; }
    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexInterval operator*(const Interval& s, const ComplexInterval& b) { return {s * b.re, s * b.im}; }
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
    ComplexInterval& operator+=(const ComplexInterval& b) { return *this = *this + b; }
    ComplexInterval& operator*=(const ComplexInterval& b) { return *this = *this * b; }
};

// exp(2*pi*i*theta) for real theta.
ComplexInterval exp_two_pi_i(const Interval& theta);
// exp(z) for complex z.
ComplexInterval exp(const ComplexInterval& z);

} // namespace cousinlab
