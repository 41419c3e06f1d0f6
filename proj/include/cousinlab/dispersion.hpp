#pragma once

#include "cousinlab/interval.hpp"
#include "cousinlab/period_lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cousinlab {

// d(sigma) = min over tau of the Euclidean norm of sigma R + tau, attained at
// the componentwise nearest integers to -sigma R (halves toward even).
struct Distance {
    Interval d;
    std::vector<Integer> tau;
    bool zero = false; // sigma R + tau == 0 exactly
};

// Repeated distance evaluation for one lattice: entry enclosures are cached
// and the exact path is used only when the cheap enclosure is too wide.
class DistanceEngine {
  public:
    explicit DistanceEngine(const PeriodMatrix& P, long rel_bits = 32);
    Distance operator()(const std::vector<Integer>& sigma) const;
    const PeriodMatrix& matrix() const { return P_; }

  private:
    Distance exact(const std::vector<Integer>& sigma) const;
    PeriodMatrix P_;
    RealMat R_;
    long rel_bits_;
    long work_bits_;
    std::vector<std::vector<Interval>> enc_;
};

Distance dist_to_lattice(const PeriodMatrix& P, const std::vector<Integer>& sigma);

Integer l1_norm(const std::vector<Integer>& v);

// All sigma != 0 with |sigma| <= budget whose first nonzero entry is positive
// (d is even in sigma), ordered by |sigma| and then lexicographically.
std::vector<std::vector<Integer>> sigma_range(int dim, long budget);

struct LiouvilleCertificate {
    Rational C;
    int A = 0; // exponent -(d-1)
    int degree = 0;
    Integer D; // common denominator: D * R_ij are algebraic integers
    int home_embedding = 0;
    struct Column {
        int j;
        Rational Cj;
        std::vector<Rational> conj_bounds; // c_jk for k != home, in embedding order
    };
    std::vector<Column> columns;
    std::vector<std::pair<Rational, Rational>> strong; // (a, C(a))
};

// Norm-argument lower bound ||sigma R + tau|| >= C (1 + |sigma|)^A.
LiouvilleCertificate liouville_certificate(const PeriodMatrix& P, const std::vector<Rational>& a_grid = {});
// C * min_{k >= 1} (1+k)^A / a^k, exact.
Rational strong_constant(const Rational& C, int A, const Rational& a);

enum class DispersionClass { strong_consistent, weak_only_consistent, liouville_suspect, rejected_not_cousin };
const char* to_string(DispersionClass c);

struct DispersionQuery {
    PeriodMatrix P;
    long sigma_budget = 100;
    std::vector<Rational> a_grid;
    long precision_bits = 256;
    bool skip_cousin_check = false;
    bool with_certificate = false;
};

struct ScanRow {
    std::vector<Integer> sigma;
    long norm;
    Distance dist;
};

struct Fit {
    double log_C = 0, slope = 0, residual = 0;
    bool valid = false;
};

struct DispersionReport {
    std::vector<ScanRow> table;
    std::vector<std::size_t> records; // indices into table of running minima
    struct PerA {
        Rational a;
        Interval min_ratio; // min d / a^|sigma|
        std::vector<Integer> argmin;
    };
    std::vector<PerA> per_a;
    Interval min_norm_times_d; // min |sigma| d(sigma)
    Fit poly_fit;              // log d = log C + A log|sigma|
    Fit exp_fit;               // log d = log C + |sigma| log a
    std::vector<double> local_exponents;
    DispersionClass classification = DispersionClass::weak_only_consistent;
    std::optional<std::vector<Integer>> zero_witness;
    std::optional<LiouvilleCertificate> certificate;
    std::string note;
};

DispersionReport dispersion_scan(const DispersionQuery& q);

// Tower alpha = sum_{j >= 1} 1/u_j with u_0 = 1, u_{j+1} = base^{u_j}.
struct TowerLevel {
    int k;
    Integer u_k;
    Rational dist_lo, dist_hi;  // inf_p |u_k alpha - p|
    Rational scale;             // u_k / u_{k+1}
    bool dist_below_two_scale;  // inf < 2 u_k / u_{k+1}
    bool two_scale_below_five;  // 2 u_k / u_{k+1} < 5^{-u_k}
    bool dist_below_five;       // inf < 5^{-u_k}
};

struct TowerSample {
    Integer q;
    int k; // u_k <= q < u_{k+1}
    Rational frac_lo, frac_hi;
    bool lower_ok, upper_ok;
};

struct TowerReport {
    int base;
    std::vector<Integer> u; // u_0 .. u_J that were formed exactly
    long tail_exponent;     // tail of the series is in (0, 2^(1 - tail_exponent)]
    std::vector<TowerLevel> levels;
    std::vector<TowerSample> samples;
    bool weak_bounds_ok = true;
    std::size_t exhaustive = 0; // nonzero if every q in range was checked
};

TowerReport tower_alpha_check(int base, const Integer& q_max, std::size_t sample_count, unsigned long seed,
                              long precision_bits);

} // namespace cousinlab
