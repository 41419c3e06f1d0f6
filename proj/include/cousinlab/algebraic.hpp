#pragma once

#include "cousinlab/interval.hpp"
#include "cousinlab/polynomial.hpp"

#include <memory>

namespace cousinlab {

// Real algebraic number: irreducible integer minimal polynomial plus a
// rational interval [lo, hi] holding exactly one of its real roots.
class AlgebraicReal {
  public:
    AlgebraicReal(const Poly& minpoly, const Rational& lo, const Rational& hi);
    // Rational number r as the root of x - r.
    static AlgebraicReal rational(const Rational& r);
    // The index-th real root (ascending, 0-based) of an irreducible poly.
    static AlgebraicReal real_root(const Poly& minpoly, int index);
    // All real roots ascending; irreducibility is checked once.
    static std::vector<AlgebraicReal> all_real_roots(const Poly& minpoly);

    const Poly& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool is_rational() const { return minpoly_.degree() == 1; }
    Rational as_rational() const; // requires is_rational()

    // Interval of width <= 2^-target_bits containing the root.
    Interval refine(long target_bits) const;

  private:
    AlgebraicReal() = default;
    static AlgebraicReal isolate(const Poly& f, const SturmSequence& sturm, int index);
    Poly minpoly_;
    Rational lo_, hi_;
    int sign_lo_ = 0; // sign of minpoly at lo (nonzero unless rational)
};

enum class Sign { negative = -1, zero = 0, positive = 1 };
const char* to_string(Sign s);

// Polynomial expression over rationals and real algebraic numbers.
class RealExpr {
  public:
    RealExpr(const Rational& q);
    RealExpr(long v) : RealExpr(Rational(v)) {}
    RealExpr(const AlgebraicReal& a);

    friend RealExpr operator+(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator-(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator*(const RealExpr& a, const RealExpr& b);
    RealExpr operator-() const;

    Interval eval(long bits) const;
    // Squarefree polynomial vanishing at the value; degree capped by
    // max_degree (ResourceError).
    Poly annihilator(int max_degree = 400) const;

  private:
    struct Node;
    explicit RealExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Exact sign. Nonzero answers come from an interval excluding zero; zero is
// certified by the annihilator's root separation bound.
Sign sign_certified(const RealExpr& e);

} // namespace cousinlab
