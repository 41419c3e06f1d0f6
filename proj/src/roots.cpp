#include "cousinlab/roots.hpp"

#include "cousinlab/errors.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numeric>

namespace cousinlab {

namespace {

Interval approx_point(const Interval& x, long w) {
    Interval r(w);
    mpfr_add(r.lo_mut(), x.lo(), x.hi(), MPFR_RNDN);
    mpfr_div_2ui(r.lo_mut(), r.lo_mut(), 1, MPFR_RNDN);
    mpfr_set(r.hi_mut(), r.lo(), MPFR_RNDN);
    return r;
}

ComplexInterval approx_point(const ComplexInterval& z, long w) { return {approx_point(z.re, w), approx_point(z.im, w)}; }

// Exponent e with |x| < 2^e for every point of x.
long mag_log2(const Interval& x) {
    mpfr_srcptr lo = x.lo(), hi = x.hi();
    long e = LONG_MIN / 4;
    if (!mpfr_zero_p(lo))
        e = std::max<long>(e, mpfr_get_exp(lo));
    if (!mpfr_zero_p(hi))
        e = std::max<long>(e, mpfr_get_exp(hi));
    return e;
}

// Double-precision Aberth iteration for starting values only; nothing
// downstream trusts these numbers.
std::vector<std::complex<double>> aberth_start(const Poly& f) {
    int n = f.degree();
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i)
        c[i] = f.coeff(i).get_d();
    double radius = 0;
    for (int i = 0; i < n; ++i) {
        double q = std::abs(c[i] / c[n]);
        if (q > 0)
            radius = std::max(radius, std::pow(q, 1.0 / (n - i)));
    }
    if (!(radius > 0) || !std::isfinite(radius))
        radius = 1;
    std::vector<std::complex<double>> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2 * M_PI * k / n + 0.4);
    auto eval = [&](std::complex<double> x, std::complex<double>& dp) {
        std::complex<double> p = c[n];
        dp = 0;
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + c[i];
        }
        return p;
    };
    for (int it = 0; it < 500; ++it) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> dp;
            std::complex<double> p = eval(z[k], dp);
            if (p == 0.0)
                continue;
            std::complex<double> ratio = p / dp;
            std::complex<double> sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0 / (z[k] - z[j]);
            std::complex<double> w = ratio / (1.0 - ratio * sum);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                z[k] -= w;
                worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[k])));
            }
        }
        if (worst < 1e-15)
            break;
    }
    return z;
}

struct DiscResult {
    bool ok = false;
    std::vector<Interval> radius;
};

// Weierstrass corrections W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)).
std::vector<ComplexInterval> weierstrass(const Poly& f, const std::vector<ComplexInterval>& z, long w) {
    int n = static_cast<int>(z.size());
    std::vector<ComplexInterval> out;
    out.reserve(n);
    Interval lc(f.lc(), w);
    for (int i = 0; i < n; ++i) {
        ComplexInterval den(lc, Interval(w));
        for (int j = 0; j < n; ++j)
            if (j != i)
                den = den * (z[i] - z[j]);
        if (den.contains_zero())
            throw std::domain_error("coincident root approximations");
        out.push_back(f.eval(z[i]) / den);
    }
    return out;
}

// Inclusion discs D(z_i, n|W_i|): their union holds all roots and each
// connected component of k discs holds exactly k roots.
DiscResult certify_discs(const Poly& f, const std::vector<ComplexInterval>& z, long w, int expected_nonreal,
                         long bits) {
    DiscResult res;
    int n = static_cast<int>(z.size());
    std::vector<ComplexInterval> W;
    try {
        W = weierstrass(f, z, w);
    } catch (const std::domain_error&) {
        return res;
    }
    Interval nn(static_cast<long>(n), w);
    for (int i = 0; i < n; ++i) {
        Interval r = nn * W[i].abs();
        res.radius.push_back(Interval(Rational(0), w));
        mpfr_set(res.radius.back().lo_mut(), r.hi(), MPFR_RNDU);
        mpfr_set(res.radius.back().hi_mut(), r.hi(), MPFR_RNDU);
        if (mpfr_zero_p(r.hi()) == 0 && mpfr_get_exp(r.hi()) > -bits - 1)
            return res;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Interval sep = res.radius[i] + res.radius[j];
            if (!sqr(sep).certainly_less((z[i] - z[j]).norm2()))
                return res;
        }
    int nonreal = 0;
    for (int i = 0; i < n; ++i)
        if (res.radius[i].certainly_less(abs(z[i].im)))
            ++nonreal;
    res.ok = (nonreal == expected_nonreal);
    return res;
}

void dk_iterate(const Poly& f, std::vector<ComplexInterval>& z, long w, long bits) {
    for (int it = 0; it < 400; ++it) {
        std::vector<ComplexInterval> W;
        try {
            W = weierstrass(f, z, w);
        } catch (const std::domain_error&) {
            // nudge coincident points apart and retry
            for (std::size_t i = 0; i < z.size(); ++i)
                z[i].re += Interval(Rational(static_cast<long>(i + 1), 1000), w);
            continue;
        }
        long worst = LONG_MIN / 4;
        for (std::size_t i = 0; i < z.size(); ++i) {
            z[i] = approx_point(z[i] - W[i], w);
            worst = std::max({worst, mag_log2(W[i].re), mag_log2(W[i].im)});
        }
        if (worst < -bits - 16)
            break;
    }
}

bool boxes_disjoint(const Interval& a, const Interval& b) { return a.certainly_less(b) || b.certainly_less(a); }

// log2 of a lower bound for the gap between distinct roots of the
// squarefree integer polynomial g (Mahler).
long separation_bits(const Poly& g) {
    Poly p = g.squarefree().primitive();
    long n = p.degree();
    if (n < 2)
        return 1;
    Integer ss = 0;
    for (auto& c : p.integer_coeffs())
        ss += c * c;
    long norm_bits = static_cast<long>(mpz_sizeinbase(ss.get_mpz_t(), 2)) / 2 + 1;
    double lg = std::log2(static_cast<double>(n));
    return static_cast<long>(std::ceil((n + 2) / 2.0 * lg)) + (n - 1) * norm_bits + 2;
}

} // namespace

RootSet::RootSet(const Poly& f) : f_(f.primitive()) {
    if (f_.degree() < 1)
        throw PreconditionError("root isolation needs a nonconstant polynomial");
    if (gcd(f_, f_.derivative()).degree() > 0)
        throw PreconditionError("polynomial has repeated roots: " + f_.to_string());
    s_ = SturmSequence(f_).count_all();
    t_ = (f_.degree() - s_) / 2;
}

std::vector<ComplexInterval> RootSet::boxes(long bits) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (bits > cert_bits_)
        certify(bits);
    return boxes_;
}

void RootSet::certify(long bits) const {
    int n = f_.degree();
    if (n == 1) {
        Rational r = -f_.coeff(0) / f_.coeff(1);
        boxes_ = {ComplexInterval(Interval(r, bits + 64), Interval(Rational(0), bits + 64))};
        z_ = boxes_;
        cert_bits_ = bits;
        return;
    }
    long w = std::max<long>(bits + 64, 128);
    bool first = z_.empty();
    if (first) {
        for (auto& c : aberth_start(f_))
            z_.emplace_back(Interval(Rational(c.real()), w), Interval(Rational(c.imag()), w));
    }
    long cap = PrecisionPolicy::global().cap_bits;
    DiscResult disc;
    for (;;) {
        for (auto& zi : z_)
            zi = approx_point(zi, w);
        dk_iterate(f_, z_, w, bits);
        if (!first) {
            // keep the conjugation symmetry of the canonical order exact
            for (int i = 0; i < s_; ++i)
                z_[i].im = Interval(Rational(0), w);
            for (int r = 0; r < t_; ++r)
                z_[s_ + t_ + r] = z_[s_ + r].conj();
        }
        disc = certify_discs(f_, z_, w, 2 * t_, bits);
        if (disc.ok)
            break;
        if (w > cap)
            throw PrecisionCapError("root isolation undecided at precision cap for " + f_.to_string());
        w *= 2;
    }

    if (first) {
        std::vector<int> reals, upper;
        for (int i = 0; i < n; ++i) {
            if (!disc.radius[i].certainly_less(abs(z_[i].im)))
                reals.push_back(i);
            else if (z_[i].im.positive())
                upper.push_back(i);
        }
        std::sort(reals.begin(), reals.end(), [&](int a, int b) { return z_[a].re.mid_rational() < z_[b].re.mid_rational(); });
        // Upper roots by real part; overlapping real parts are resolved
        // exactly through the polynomial satisfied by 2 Re z.
        long sep = -1;
        auto less_upper = [&](int a, int b) {
            Interval ra = Interval::hull(z_[a].re - disc.radius[a], z_[a].re + disc.radius[a]);
            Interval rb = Interval::hull(z_[b].re - disc.radius[b], z_[b].re + disc.radius[b]);
            if (boxes_disjoint(ra, rb))
                return ra.certainly_less(rb);
            if (sep < 0) {
                if (n > 10)
                    throw ResourceError("real-part tie resolution limited to degree 10");
                sep = separation_bits(root_sum_poly(f_, f_));
            }
            return z_[a].im.mid_rational() < z_[b].im.mid_rational();
        };
        // Refine until every overlapping pair is disjoint or below the
        // separation bound (then the real parts are equal).
        for (;;) {
            bool pending = false;
            for (std::size_t x = 0; x < upper.size() && !pending; ++x)
                for (std::size_t y = x + 1; y < upper.size(); ++y) {
                    int a = upper[x], b = upper[y];
                    Interval ra = Interval::hull(z_[a].re - disc.radius[a], z_[a].re + disc.radius[a]);
                    Interval rb = Interval::hull(z_[b].re - disc.radius[b], z_[b].re + disc.radius[b]);
                    if (boxes_disjoint(ra, rb))
                        continue;
                    less_upper(a, b); // computes sep
                    if (-mag_log2(ra - rb) <= sep + 2) {
                        pending = true;
                        break;
                    }
                }
            if (!pending)
                break;
            bits = std::max(bits * 2, sep + 8);
            w = bits + 64;
            for (auto& zi : z_)
                zi = approx_point(zi, w);
            dk_iterate(f_, z_, w, bits);
            disc = certify_discs(f_, z_, w, 2 * t_, bits);
            if (!disc.ok)
                throw PrecisionCapError("root isolation lost certification during tie resolution");
        }
        std::sort(upper.begin(), upper.end(), less_upper);
        std::vector<ComplexInterval> ordered;
        std::vector<Interval> rad;
        for (int i : reals) {
            ordered.push_back(z_[i]);
            rad.push_back(disc.radius[i]);
        }
        for (int i : upper) {
            ordered.push_back(z_[i]);
            rad.push_back(disc.radius[i]);
        }
        for (int i : upper) {
            ordered.push_back(z_[i].conj());
            rad.push_back(disc.radius[i]);
        }
        z_ = ordered;
        disc.radius = rad;
        // conjugates were substituted by mirror images: recertify
        for (int i = 0; i < s_; ++i)
            z_[i].im = Interval(Rational(0), w);
        disc = certify_discs(f_, z_, w, 2 * t_, bits);
        if (!disc.ok)
            throw PrecisionCapError("root isolation failed after symmetrization");
    }

    boxes_.clear();
    for (int i = 0; i < n; ++i) {
        const Interval& r = disc.radius[i];
        if (i < s_)
            boxes_.emplace_back(Interval::hull(z_[i].re - r, z_[i].re + r), Interval(Rational(0), w));
        else if (i < s_ + t_)
            boxes_.emplace_back(Interval::hull(z_[i].re - r, z_[i].re + r), Interval::hull(z_[i].im - r, z_[i].im + r));
        else
            boxes_.push_back(boxes_[i - t_].conj());
    }
    cert_bits_ = bits;
}

bool is_irreducible(const Poly& f0) {
    Poly f = f0.primitive();
    int d = f.degree();
    if (d < 1)
        throw PreconditionError("irreducibility of a constant");
    if (d == 1)
        return true;
    if (gcd(f, f.derivative()).degree() > 0)
        return false;
    if (d > 16)
        throw ResourceError("irreducibility check limited to degree 16");
    RootSet roots(f);
    int s = roots.real_count(), t = roots.complex_pairs();
    int units = s + t;
    long bits = 128;
    for (;;) {
        auto z = roots.boxes(bits);
        long w = z[0].precision();
        bool refine = false;
        Interval lc(f.lc(), w);
        for (unsigned long mask = 1; mask + 1 < (1UL << units); ++mask) {
            int k = 0;
            for (int u = 0; u < units; ++u)
                if (mask >> u & 1)
                    k += (u < s) ? 1 : 2;
            if (2 * k > d)
                continue;
            // lc * prod (x - z_i), conjugate pairs contribute real quadratics
            std::vector<Interval> coef{lc};
            auto mul_linear = [&](const Interval& c0, const Interval& c1) {
                // multiply by (c1 x + c0)
                std::vector<Interval> out(coef.size() + 1, Interval(w));
                for (std::size_t i = 0; i < coef.size(); ++i) {
                    out[i] += coef[i] * c0;
                    out[i + 1] += coef[i] * c1;
                }
                coef = std::move(out);
            };
            Interval one(1L, w);
            for (int u = 0; u < units; ++u) {
                if (!(mask >> u & 1))
                    continue;
                if (u < s) {
                    mul_linear(-z[u].re, one);
                } else {
                    const ComplexInterval& c = z[u];
                    // x^2 - 2 Re c x + |c|^2
                    std::vector<Interval> out(coef.size() + 2, Interval(w));
                    Interval b = -(Interval(2L, w) * c.re);
                    Interval n2 = c.norm2();
                    for (std::size_t i = 0; i < coef.size(); ++i) {
                        out[i] += coef[i] * n2;
                        out[i + 1] += coef[i] * b;
                        out[i + 2] += coef[i];
                    }
                    coef = std::move(out);
                }
            }
            std::vector<Rational> cand;
            bool possible = true;
            for (auto& c : coef) {
                Integer lo = ceil_of(c.lo_rational()), hi = floor_of(c.hi_rational());
                if (lo > hi) {
                    possible = false;
                    break;
                }
                if (lo != hi) {
                    refine = true;
                    possible = false;
                    break;
                }
                cand.emplace_back(lo);
            }
            if (!possible)
                continue;
            Poly h(cand);
            if (h.degree() == k && (f % h).is_zero())
                return false;
        }
        if (!refine)
            return true;
        bits *= 2;
        if (bits > PrecisionPolicy::global().cap_bits)
            throw PrecisionCapError("irreducibility undecided at precision cap");
    }
}

} // namespace cousinlab
