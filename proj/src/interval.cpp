#include "cousinlab/interval.hpp"

#include "cousinlab/errors.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <ostream>

namespace cousinlab {

namespace {

// Widest exponent range so tower-style magnitudes never overflow/underflow.
struct ExponentRange {
    ExponentRange() {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
    }
};
const ExponentRange exponent_range_guard;

long clamp_prec(long p) { return std::clamp<long>(p, MPFR_PREC_MIN + 1, MPFR_PREC_MAX / 2); }

} // namespace

PrecisionPolicy& PrecisionPolicy::global() {
    static PrecisionPolicy policy;
    return policy;
}

void Interval::init(long prec) {
    prec_ = clamp_prec(prec);
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
}

Interval::Interval(long prec) {
    init(prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, long prec) {
    init(prec);
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, long prec) {
    init(prec);
    if (lo > hi)
        throw std::invalid_argument("Interval: lo > hi");
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long value, long prec) {
    init(prec);
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
    init(other.prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
    init(other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        if (prec_ != other.prec_) {
            prec_ = other.prec_;
            mpfr_set_prec(lo_, prec_);
            mpfr_set_prec(hi_, prec_);
        }
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    if (this != &other) {
        std::swap(prec_, other.prec_);
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::pi(long prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Rational Interval::lo_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

Rational Interval::hi_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

Rational Interval::mid_rational() const { return (lo_rational() + hi_rational()) / 2; }

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double Interval::width_double() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

long Interval::width_log2() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    long e = mpfr_zero_p(w) ? LONG_MIN / 4 : static_cast<long>(mpfr_get_exp(w));
    mpfr_clear(w);
    return e;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::nonnegative() const { return mpfr_sgn(lo_) >= 0; }

bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
bool Interval::certainly_less_equal(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }

bool Interval::relative_width_at_most(long bits) const {
    if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_))
        return true;
    if (contains_zero())
        return false;
    mpfr_t w, mag;
    mpfr_init2(w, prec_);
    mpfr_init2(mag, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    if (mpfr_sgn(lo_) > 0)
        mpfr_set(mag, lo_, MPFR_RNDD);
    else
        mpfr_neg(mag, hi_, MPFR_RNDD);
    mpfr_div_2si(mag, mag, bits, MPFR_RNDD);
    bool ok = mpfr_lessequal_p(w, mag) != 0;
    mpfr_clear(w);
    mpfr_clear(mag);
    return ok;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    long p = std::max(a.prec_, b.prec_);
    Interval r(p);
    // Sign-case analysis keeps the common cases to two multiplications.
    int al = mpfr_sgn(a.lo_), ah = mpfr_sgn(a.hi_), bl = mpfr_sgn(b.lo_), bh = mpfr_sgn(b.hi_);
    if (al >= 0 && bl >= 0) {
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    if (ah <= 0 && bh <= 0) {
        mpfr_mul(r.lo_, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        return r;
    }
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
        throw std::domain_error("Interval division by an interval containing zero");
    Interval inv(std::max(a.prec_, b.prec_));
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Interval sqr(const Interval& a) {
    Interval r(a.prec_);
    if (mpfr_sgn(a.lo_) >= 0) {
        mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    } else if (mpfr_sgn(a.hi_) <= 0) {
        mpfr_sqr(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
        mpfr_sqr(t, a.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
    }
    return r;
}

Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.hi_) < 0)
        throw std::domain_error("Interval sqrt of a negative interval");
    Interval r(a.prec_);
    if (mpfr_sgn(a.lo_) <= 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval exp(const Interval& a) {
    Interval r(a.prec_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval log(const Interval& a) {
    if (!a.positive())
        throw std::domain_error("Interval log of a non-positive interval");
    Interval r(a.prec_);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

namespace {

// sin and cos are 1-Lipschitz: f(I) is inside f(mid) +- radius.
Interval lipschitz_trig(const Interval& a, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    long p = a.precision();
    Interval r(p);
    mpfr_t mid, rad, t;
    mpfr_init2(mid, p + 2);
    mpfr_init2(rad, p);
    mpfr_init2(t, p);
    mpfr_add(mid, a.lo(), a.hi(), MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    mpfr_sub(rad, a.hi(), mid, MPFR_RNDU);
    mpfr_sub(t, mid, a.lo(), MPFR_RNDU);
    mpfr_max(rad, rad, t, MPFR_RNDU);
    if (mpfr_cmp_ui(rad, 2) >= 0) {
        mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
        mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    } else {
        fn(t, mid, MPFR_RNDD);
        mpfr_sub(r.lo_mut(), t, rad, MPFR_RNDD);
        fn(t, mid, MPFR_RNDU);
        mpfr_add(r.hi_mut(), t, rad, MPFR_RNDU);
        if (mpfr_cmp_si(r.lo(), -1) < 0)
            mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
        if (mpfr_cmp_si(r.hi(), 1) > 0)
            mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    }
    mpfr_clear(mid);
    mpfr_clear(rad);
    mpfr_clear(t);
    return r;
}

} // namespace

Interval sin(const Interval& a) { return lipschitz_trig(a, mpfr_sin); }
Interval cos(const Interval& a) { return lipschitz_trig(a, mpfr_cos); }

Interval abs(const Interval& a) {
    if (mpfr_sgn(a.lo_) >= 0)
        return a;
    if (mpfr_sgn(a.hi_) <= 0)
        return -a;
    Interval r(a.prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, a.prec_);
    mpfr_neg(t, a.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, t, a.hi_, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval pow(const Interval& a, unsigned long e) {
    if (e == 0)
        return Interval(1L, a.prec_);
    if (e == 1)
        return a;
    Interval half = pow(a, e / 2);
    Interval sq = sqr(half);
    return (e % 2 == 0) ? sq : sq * a;
}

Interval max(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval min(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::string Interval::to_string(int digits) const {
    char* lo_s = nullptr;
    char* hi_s = nullptr;
    mpfr_asprintf(&lo_s, "%.*RDe", digits, lo_);
    mpfr_asprintf(&hi_s, "%.*RUe", digits, hi_);
    std::string s = std::string("[") + lo_s + ", " + hi_s + "]";
    mpfr_free_str(lo_s);
    mpfr_free_str(hi_s);
    return s;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.to_string(); }

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    Interval den = b.norm2();
    ComplexInterval num = a * b.conj();
    return {num.re / den, num.im / den};
}

ComplexInterval exp_two_pi_i(const Interval& theta) {
    Interval angle = Interval(2L, theta.precision()) * Interval::pi(theta.precision()) * theta;
    return {cos(angle), sin(angle)};
}

ComplexInterval exp(const ComplexInterval& z) {
    Interval mod = exp(z.re);
    return {mod * cos(z.im), mod * sin(z.im)};
}

} // namespace cousinlab
