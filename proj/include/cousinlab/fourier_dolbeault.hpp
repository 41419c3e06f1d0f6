#pragma once

#include "cousinlab/period_lattice.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cousinlab {

// Character gamma_{pi,rho,sigma} of the group, pi and rho in Z^m, sigma in Z^{n-m}.
struct CharIndex {
    std::vector<Integer> pi, rho, sigma;

    bool is_zero() const;
    friend bool operator<(const CharIndex& a, const CharIndex& b);
    friend bool operator==(const CharIndex& a, const CharIndex& b);
};

CharIndex zero_character(int n, int m);

// a = 1/2 ((pi - sigma R1) + i (rho - pi M + sigma (R1 M - R2)) N^{-1}); the
// anti-holomorphic derivative of gamma is 2 pi i sum_j a_j dzbar_j wedge gamma.
using AVector = std::vector<ExactComplex>;
AVector a_vector(const PeriodMatrix& P, const CharIndex& idx);

// Finite sum of c * (2 pi i)^power * gamma * dz_I ^ dzbar_J with I in 0..n-1
// (|I| = p) and J in 0..m-1 (|J| = q), index lists sorted ascending. All terms
// share one power of 2 pi i; that keeps the coefficients exact.
class FourierPQForm {
  public:
    struct Key {
        CharIndex c;
        std::vector<int> I, J;
        friend bool operator<(const Key& a, const Key& b);
    };

    FourierPQForm(int n, int m, int p, int q, int power = 0);

    int n() const { return n_; }
    int m() const { return m_; }
    int p() const { return p_; }
    int q() const { return q_; }
    int power() const { return power_; }
    const std::map<Key, ExactComplex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& k, const ExactComplex& c);
    FourierPQForm& operator+=(const FourierPQForm& other);
    FourierPQForm& operator-=(const FourierPQForm& other);
    friend FourierPQForm operator+(FourierPQForm a, const FourierPQForm& b) { return a += b; }
    friend FourierPQForm operator-(FourierPQForm a, const FourierPQForm& b) { return a -= b; }
    FourierPQForm scaled(const ExactComplex& c) const;
    friend bool operator==(const FourierPQForm& a, const FourierPQForm& b);

  private:
    void check_compatible(const FourierPQForm& other) const;
    void absorb_power(const FourierPQForm& other);
    int n_, m_, p_, q_, power_;
    std::map<Key, ExactComplex> terms_;
};

FourierPQForm dbar(const FourierPQForm& f, const PeriodMatrix& P);

enum class Contraction { hermitian, unconjugated };

// Interior product with w_j = conj(a_j) / ||a||^2 (the Hermitian choice, so
// that sum_j a_j w_j = 1), divided by 2 pi i; zero character terms dropped.
// The unconjugated variant w_j = a_j / ||a||^2 is kept for comparison only.
FourierPQForm contraction(const FourierPQForm& f, const PeriodMatrix& P,
                          Contraction kind = Contraction::hermitian);

// eta with dbar(eta) = f - harmonic_part(f) for dbar-closed f of degree q >= 1.
FourierPQForm homotopy_eta(const FourierPQForm& f, const PeriodMatrix& P,
                           Contraction kind = Contraction::hermitian);

FourierPQForm harmonic_part(const FourierPQForm& f);

// All characters with every coordinate in [-box, box], lexicographic order.
std::vector<CharIndex> characters_in_box(int n, int m, long box);

// dim H^{p,q} of the complex truncated to the box (zero character included),
// by exact ranks of the dbar blocks of every character.
long cohomology_dims(const PeriodMatrix& P, int p, int q, long box);

struct BoundConstants {
    Rational k1; // >= ||M N^{-1}||
    Rational k2; // <= 1 / ||N||
    Rational k;  // k2 / (1 + k1 + k2)
    Rational kappa0;                                // floor of ||a|| for sigma = 0, idx != 0
    std::vector<std::pair<Rational, Rational>> C1; // (a, k C(a) / 2)
};

BoundConstants bound_constants(const PeriodMatrix& P, const std::vector<std::pair<Rational, Rational>>& C_of_a);

struct BoundVerification {
    Rational a, C1;
    long box = 0;
    std::size_t checked = 0;
    std::vector<CharIndex> violations;
    double min_margin = 0; // min ||a|| / (C1 a^|sigma|)
    CharIndex argmin;
    double kappa_box = 0; // min ||a_{pi,rho,0}|| over |pi|,|rho| <= 2, idx != 0
    bool kappa0_ok = true;
};

// Certified check of ||a_idx|| >= C1 a^|sigma| for all idx != 0 with every
// coordinate in [-box, box]; sigma = 0 entries are also held against kappa0.
BoundVerification verify_bound(const PeriodMatrix& P, const BoundConstants& bc, const Rational& a, long box);

} // namespace cousinlab
