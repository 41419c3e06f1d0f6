#pragma once

#include "cousinlab/interval.hpp"
#include "cousinlab/polynomial.hpp"

#include <mutex>
#include <vector>

namespace cousinlab {

// Certified isolation of all complex roots of a squarefree rational
// polynomial. Root order is canonical: real roots ascending, then the roots
// with positive imaginary part sorted by (real part, imaginary part), then
// their conjugates in the same order.
class RootSet {
  public:
    explicit RootSet(const Poly& f);
    RootSet(const RootSet&) = delete;
    RootSet& operator=(const RootSet&) = delete;

    const Poly& poly() const { return f_; }
    int degree() const { return f_.degree(); }
    int real_count() const { return s_; }
    int complex_pairs() const { return t_; }

    // Boxes of width <= 2^-bits, one per root, canonical order. Real roots
    // come back with a point imaginary part [0, 0].
    std::vector<ComplexInterval> boxes(long bits) const;
    ComplexInterval box(int index, long bits) const { return boxes(bits)[index]; }

  private:
    void certify(long bits) const;

    Poly f_;
    int s_ = 0, t_ = 0;
    mutable std::mutex mu_;
    mutable long cert_bits_ = 0;
    mutable std::vector<ComplexInterval> z_;     // point approximations, canonical order
    mutable std::vector<ComplexInterval> boxes_; // certified
};

// Exact irreducibility over Q of an integer polynomial of degree >= 1.
// Certified via the isolated roots: a factor of degree k < d would be
// lc * prod(x - z_i) over a conjugation-closed subset, which must be an
// integer polynomial dividing f exactly. Degree cap 16 (ResourceError).
bool is_irreducible(const Poly& f);

} // namespace cousinlab
