#pragma once

#include "cousinlab/dispersion.hpp"

#include <vector>

namespace cousinlab {

struct WitnessItem {
    int k;
    std::vector<Integer> sigma;
    std::vector<Integer> tau;
    long norm; // |sigma|
    Interval d;
    Interval eta;
};

// Items k = 1, 2, ... with d(sigma(k)) < a^|sigma(k)| / k, |sigma(k)| strictly
// increasing, all sigma(k) in one closed orthant. domain_tag holds the signs.
struct WitnessSequence {
    Rational a;
    std::vector<int> domain_tag;
    std::vector<WitnessItem> items;
    bool complete = false; // k_max items were found within the budget
    long budget = 0;
};

WitnessSequence find_witnesses(const PeriodMatrix& P, const Rational& a, int k_max, long sigma_budget,
                               bool skip_cousin_check = false);

// max_j |e(sigma . r_j) - 1| over the columns of R, e(t) = exp(2 pi i t).
Interval eta_sigma(const PeriodMatrix& P, const std::vector<Integer>& sigma);

struct CocycleValue {
    ComplexInterval value;
    Interval tail_bound; // bound on the omitted items k > K_max
};

// Truncated A^(x)(lambda, z). lambda holds integer coordinates on the n+m normal
// form columns, z is a point of C^n.
CocycleValue evaluate_cocycle(const PeriodMatrix& P, const Rational& x, const std::vector<Integer>& lambda,
                              const std::vector<ExactComplex>& z, const WitnessSequence& w,
                              std::size_t K_max, long prec = 128);

struct RadiusEstimate {
    Rational x;
    double radius, lo, hi;
};

struct CocycleReport {
    Rational a;
    std::vector<int> domain_tag;
    std::size_t item_count = 0;
    std::vector<Interval> eta_values;
    double rho_estimate = 0, rho_error = 0;
    bool rho_le_a = false;
    std::vector<RadiusEstimate> radii;
    bool radii_increasing = false;
    bool radii_below_one = false;
    bool separation_ok = false;
    std::string note;
};

// Root-test estimates of the radii of convergence a^{-x} rho from the last
// five items; an estimate with an error bar, not a certificate.
CocycleReport radius_report(const std::vector<Rational>& xs, const WitnessSequence& w);

} // namespace cousinlab
