#pragma once

#include "cousinlab/algebraic.hpp"
#include "cousinlab/interval.hpp"
#include "cousinlab/polynomial.hpp"
#include "cousinlab/roots.hpp"

#include <memory>
#include <vector>

namespace cousinlab {

class FieldElement;

// K = Q(theta) for an irreducible integer polynomial. Embeddings are indexed
// 1..d: 1..s real (ascending), s+1..s+t upper half plane, s+t+r = conj(s+r).
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    static std::shared_ptr<const NumberField> make(const Poly& minpoly);

    const Poly& minpoly() const { return f_; }
    int degree() const { return f_.degree(); }
    int s() const { return roots_->real_count(); }
    int t() const { return roots_->complex_pairs(); }
    const RootSet& roots() const { return *roots_; }
    // theta as an exact real number for real embedding index 1..s
    const AlgebraicReal& real_root(int index) const { return real_roots_.at(index - 1); }
    // Real embedding index (1-based) of the unique root in [lo, hi].
    int real_index_in(const Rational& lo, const Rational& hi) const;

    FieldElement element(std::vector<Rational> coords) const;
    FieldElement from_poly(const Poly& g) const;
    FieldElement from_rational(const Rational& q) const;
    FieldElement theta() const;

    // reduction modulo the defining polynomial
    Poly reduce(const Poly& g) const { return g % f_; }

  private:
    explicit NumberField(const Poly& minpoly);
    Poly f_;
    std::unique_ptr<RootSet> roots_;
    std::vector<AlgebraicReal> real_roots_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

bool same_field(const FieldPtr& a, const FieldPtr& b);

class FieldElement {
  public:
    FieldElement(FieldPtr field, std::vector<Rational> coords);

    const FieldPtr& field() const { return K_; }
    const std::vector<Rational>& coords() const { return c_; }
    Poly poly() const { return Poly(c_); }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const { return c_[0]; } // valid when is_rational()

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const Rational& q, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    // Matrix of multiplication by this element on the power basis.
    std::vector<std::vector<Rational>> mult_matrix() const;
    Poly charpoly() const;
    Poly minpoly() const;
    bool is_integral() const;
    Rational norm() const;
    Rational trace() const;

    // Box of width <= 2^-bits around sigma_index(x), index 1..d.
    ComplexInterval embed(int index, long bits) const;
    // Real embedding only (index 1..s).
    Interval embed_real(int index, long bits) const;
    // Exact sign of sigma_index(x) for a real embedding.
    Sign real_sign(int index) const;

  private:
    FieldPtr K_;
    std::vector<Rational> c_;
};

bool is_unit(const FieldElement& x);
bool is_totally_positive(const FieldElement& x);

enum class Decision { yes, no, undecided };
const char* to_string(Decision d);

// Rank of (log sigma_i(u_j))_{i <= s} equals s, decided with certified
// interval minors at doubling precision.
Decision log_rank_check(const std::vector<FieldElement>& gens, int s);

} // namespace cousinlab
