#pragma once

#include "cousinlab/algebraic.hpp"
#include "cousinlab/number_field.hpp"

#include <optional>
#include <string>

namespace cousinlab {

// Shared field per defining polynomial, so that entries parsed separately
// land in the same NumberField object.
FieldPtr field_for(const Poly& minpoly);

// Exact real number: a rational, or an element of Q(theta) evaluated at a
// fixed real embedding of theta. All entries of one period matrix share a
// single (field, embedding) pair.
class ExactReal {
  public:
    ExactReal() : q_(0) {}
    ExactReal(const Rational& q) : q_(q) {}
    ExactReal(long v) : q_(v) {}
    ExactReal(const FieldElement& x, int real_index);
    // The algebraic number itself, as theta of Q(theta).
    static ExactReal from_algebraic(const AlgebraicReal& a);

    bool is_rational() const { return !x_.has_value(); }
    const Rational& rational() const { return q_; } // valid when is_rational()
    const FieldElement& element() const { return *x_; }
    int embedding() const { return emb_; }
    FieldPtr field() const { return x_ ? x_->field() : nullptr; }

    ExactReal operator-() const;
    friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
    ExactReal& operator+=(const ExactReal& b) { return *this = *this + b; }
    ExactReal& operator-=(const ExactReal& b) { return *this = *this - b; }
    ExactReal& operator*=(const ExactReal& b) { return *this = *this * b; }
    friend bool operator==(const ExactReal& a, const ExactReal& b);
    friend bool operator!=(const ExactReal& a, const ExactReal& b) { return !(a == b); }
    friend bool operator<(const ExactReal& a, const ExactReal& b) { return (a - b).sign() == Sign::negative; }
    ExactReal inverse() const;

    bool is_zero() const;
    Sign sign() const;
    Integer floor() const;
    Integer round_half_even() const;
    ExactReal abs() const { return sign() == Sign::negative ? -*this : *this; }

    // Width <= 2^-bits.
    Interval interval(long bits) const;
    double approx() const;
    std::string to_string() const;

  private:
    static ExactReal collapse(FieldElement x, int emb);
    Rational q_;
    std::optional<FieldElement> x_;
    int emb_ = 0;
};

// Exact element re + i*im with real and imaginary parts in the same field.
struct ExactComplex {
    ExactReal re, im;

    ExactComplex() = default;
    ExactComplex(ExactReal r, ExactReal i = ExactReal(0)) : re(std::move(r)), im(std::move(i)) {}
    ExactComplex(const Rational& r) : re(r), im(0) {}
    ExactComplex(long r) : re(r), im(0) {}
    static ExactComplex i() { return {ExactReal(0), ExactReal(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    ExactComplex conj() const { return {re, -im}; }
    ExactReal norm2() const { return re * re + im * im; }

    ExactComplex operator-() const { return {-re, -im}; }
    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        ExactReal n = b.norm2().inverse();
        ExactComplex c = a * b.conj();
        return {c.re * n, c.im * n};
    }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
    ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
    ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
    ExactComplex inverse() const { return ExactComplex(1) / *this; }

    ComplexInterval interval(long bits) const { return {re.interval(bits), im.interval(bits)}; }
};

} // namespace cousinlab
