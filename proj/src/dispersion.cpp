#include "cousinlab/dispersion.hpp"

#include "cousinlab/errors.hpp"
#include "cousinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace cousinlab {

unsigned& thread_setting() {
    static unsigned t = 0;
    return t;
}

namespace {

Integer pow_int(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational pow_q(const Rational& b, unsigned long e) {
    Rational r(pow_int(b.get_num(), e), pow_int(b.get_den(), e));
    return r;
}

Rational frac_of(const Rational& x) { return x - Rational(floor_of(x)); }

// rational upper bound of |x| over a certified interval
Rational abs_upper(const Interval& x) { return std::max(abs_of(x.lo_rational()), abs_of(x.hi_rational())); }

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    Fit f;
    std::size_t n = x.size();
    if (n < 2)
        return f;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        return f;
    f.slope = sxy / sxx;
    f.log_C = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - (f.log_C + f.slope * x[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    f.valid = true;
    return f;
}

// log of a positive interval's midpoint, robust to tiny values
double log_mid(const Interval& d) {
    long e = 0;
    double m = mpfr_get_d_2exp(&e, d.hi(), MPFR_RNDN);
    double lo_m = 0;
    long lo_e = 0;
    lo_m = mpfr_get_d_2exp(&lo_e, d.lo(), MPFR_RNDN);
    if (lo_m > 0)
        return 0.5 * (std::log(m) + e * std::log(2.0) + std::log(lo_m) + lo_e * std::log(2.0));
    return std::log(m) + e * std::log(2.0);
}

void compositions(int dim, long total, std::vector<Integer>& cur, std::vector<std::vector<Integer>>& out) {
    int pos = static_cast<int>(cur.size());
    if (pos == dim - 1) {
        for (int sgn : {1, -1}) {
            if (total == 0 && sgn < 0)
                continue;
            cur.push_back(Integer(sgn * total));
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (long a = -total; a <= total; ++a) {
        cur.push_back(Integer(a));
        compositions(dim, total - std::labs(a), cur, out);
        cur.pop_back();
    }
}

Integer minimal_denominator(const ExactReal& x) {
    if (x.is_rational())
        return x.rational().get_den();
    const FieldElement& e = x.element();
    const Poly& f = e.field()->minpoly();
    Integer D0 = 1;
    for (const auto& c : e.coords())
        mpz_lcm(D0.get_mpz_t(), D0.get_mpz_t(), c.get_den_mpz_t());
    Integer lc = f.lc().get_num();
    D0 *= pow_int(abs(lc), static_cast<unsigned long>(f.degree() - 1));
    if (!(Rational(D0) * e).is_integral())
        throw std::logic_error("minimal_denominator: bound is not a denominator");
    if (D0 > 1000000)
        return D0;
    long d0 = D0.get_si();
    for (long D = 1; D < d0; ++D)
        if (d0 % D == 0 && (Rational(D) * e).is_integral())
            return Integer(D);
    return D0;
}

} // namespace

Integer l1_norm(const std::vector<Integer>& v) {
    Integer s = 0;
    for (const auto& z : v)
        s += abs(z);
    return s;
}

std::vector<std::vector<Integer>> sigma_range(int dim, long budget) {
    std::vector<std::vector<Integer>> out;
    for (long L = 1; L <= budget; ++L) {
        std::vector<std::vector<Integer>> level;
        std::vector<Integer> cur;
        compositions(dim, L, cur, level);
        for (auto& v : level) {
            auto lead = std::find_if(v.begin(), v.end(), [](const Integer& z) { return z != 0; });
            if (lead != v.end() && *lead > 0)
                out.push_back(std::move(v));
        }
    }
    // lexicographic within each |sigma| level
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        Integer la = l1_norm(a), lb = l1_norm(b);
        if (la != lb)
            return la < lb;
        return a < b;
    });
    return out;
}

DistanceEngine::DistanceEngine(const PeriodMatrix& P, long rel_bits)
    : P_(P), R_(P.R()), rel_bits_(rel_bits), work_bits_(std::max<long>(192, 4 * rel_bits)) {
    for (const auto& row : R_) {
        std::vector<Interval> e;
        for (const auto& x : row)
            e.push_back(x.interval(work_bits_));
        enc_.push_back(std::move(e));
    }
}

Distance DistanceEngine::operator()(const std::vector<Integer>& sigma) const {
    std::size_t cols = R_.empty() ? 0 : R_[0].size();
    long prec = work_bits_ + 64;
    Interval d2(Rational(0), prec);
    std::vector<Integer> tau(cols);
    Rational half(1, 2);
    for (std::size_t j = 0; j < cols; ++j) {
        Interval v(Rational(0), prec);
        for (std::size_t i = 0; i < R_.size(); ++i)
            if (sigma[i] != 0)
                v += Interval(Rational(sigma[i]), prec) * enc_[i][j];
        // tau_j = round(-v): floor(-v + 1/2) must be unambiguous
        Interval w = Interval(half, prec) - v;
        Integer fl = floor_of(w.lo_rational());
        if (!(w.lo_rational() > Rational(fl)) || !(w.hi_rational() < Rational(fl + 1)))
            return exact(sigma);
        tau[j] = fl;
        Interval f = v + Interval(Rational(fl), prec);
        d2 += sqr(f);
    }
    Interval d = sqrt(d2);
    if (!d.relative_width_at_most(rel_bits_) || !d.positive())
        return exact(sigma);
    return {d, tau, false};
}

Distance DistanceEngine::exact(const std::vector<Integer>& sigma) const {
    auto v = sigma_times(sigma, R_);
    std::vector<Integer> tau;
    std::vector<ExactReal> frac;
    bool zero = true;
    for (const auto& x : v) {
        Integer t = (-x).round_half_even();
        tau.push_back(t);
        frac.push_back(x + ExactReal(Rational(t)));
        zero = zero && frac.back().is_zero();
    }
    if (zero)
        return {Interval(Rational(0), 64), tau, true};
    for (long bits = 64; bits <= PrecisionPolicy::global().cap_bits; bits *= 2) {
        Interval d2(Rational(0), bits + 64);
        for (const auto& f : frac)
            d2 += sqr(f.interval(bits));
        Interval d = sqrt(d2);
        if (d.positive() && d.relative_width_at_most(rel_bits_))
            return {d, tau, false};
    }
    throw PrecisionCapError("dist_to_lattice: precision cap reached");
}

Distance dist_to_lattice(const PeriodMatrix& P, const std::vector<Integer>& sigma) {
    if (static_cast<int>(sigma.size()) != P.n - P.m)
        throw SchemaError("sigma has the wrong length");
    if (l1_norm(sigma) == 0)
        throw PreconditionError("dist_to_lattice needs sigma != 0");
    return DistanceEngine(P)(sigma);
}

Rational strong_constant(const Rational& C, int A, const Rational& a) {
    if (!(a > 0 && a < 1))
        throw PreconditionError("a must lie in (0, 1)");
    unsigned long e = static_cast<unsigned long>(-A);
    auto f = [&](long k) -> Rational { return 1 / (pow_q(Rational(1 + k), e) * pow_q(a, static_cast<unsigned long>(k))); };
    long k = 1;
    Rational best = f(1);
    for (;;) {
        Rational next = f(k + 1);
        if (!(next < best))
            break;
        best = next;
        ++k;
    }
    return C * best;
}

LiouvilleCertificate liouville_certificate(const PeriodMatrix& P, const std::vector<Rational>& a_grid) {
    FieldPtr K = P.field();
    if (!K)
        throw PreconditionError("liouville certificate needs algebraic (non-rational) entries");
    if (!is_cousin(P).cousin)
        throw PreconditionError("liouville certificate needs a Cousin lattice");
    RealMat R = P.R();
    LiouvilleCertificate cert;
    cert.degree = K->degree();
    cert.A = -(cert.degree - 1);
    cert.D = 1;
    for (const auto& row : R)
        for (const auto& x : row) {
            if (!x.is_rational() && cert.home_embedding == 0)
                cert.home_embedding = x.embedding();
            Integer dx = minimal_denominator(x);
            mpz_lcm(cert.D.get_mpz_t(), cert.D.get_mpz_t(), dx.get_mpz_t());
        }
    int d = cert.degree, home = cert.home_embedding;
    Rational Dd = pow_q(Rational(cert.D), d);
    Rational C = 1;
    for (std::size_t j = 0; j < R[0].size(); ++j) {
        LiouvilleCertificate::Column col{static_cast<int>(j), 0, {}};
        Rational max_home = 0;
        for (const auto& row : R)
            max_home = std::max(max_home, abs_upper(row[j].interval(60)));
        Rational prod = 1;
        for (int k = 1; k <= d; ++k) {
            if (k == home)
                continue;
            Rational mk = 0;
            for (const auto& row : R) {
                const ExactReal& x = row[j];
                Rational b;
                if (x.is_rational())
                    b = abs_of(x.rational());
                else
                    b = x.element().embed(k, 60).abs().hi_rational();
                mk = std::max(mk, b);
            }
            // round the bound up to a short dyadic
            Interval c(mk + max_home, 64);
            Rational ck = std::max(c.hi_rational(), Rational(1, 2));
            col.conj_bounds.push_back(ck);
            prod *= ck;
        }
        col.Cj = 1 / (Dd * prod);
        C = std::min(C, col.Cj);
        cert.columns.push_back(std::move(col));
    }
    cert.C = C;
    for (const auto& a : a_grid)
        cert.strong.emplace_back(a, strong_constant(C, cert.A, a));
    return cert;
}

const char* to_string(DispersionClass c) {
    switch (c) {
    case DispersionClass::strong_consistent:
        return "strong_consistent";
    case DispersionClass::weak_only_consistent:
        return "weak_only_consistent";
    case DispersionClass::liouville_suspect:
        return "liouville_suspect";
    case DispersionClass::rejected_not_cousin:
        return "rejected_not_cousin";
    }
    return "?";
}

DispersionReport dispersion_scan(const DispersionQuery& q) {
    const PeriodMatrix& P = q.P;
    if (q.sigma_budget < 1)
        throw SchemaError("sigma budget must be >= 1");
    for (const auto& a : q.a_grid)
        if (!(a > 0 && a < 1))
            throw SchemaError("every a must lie strictly inside (0, 1)");
    if (!q.skip_cousin_check) {
        auto c = is_cousin(P);
        if (!c.cousin) {
            std::string w;
            for (const auto& z : c.sigma)
                w += (w.empty() ? "" : ",") + z.get_str();
            throw PreconditionError("dispersion scan needs a Cousin lattice; witness sigma = (" + w + ")");
        }
    }
    long max_rows = 5'000'000;
    auto sigmas = sigma_range(P.n - P.m, q.sigma_budget);
    if (static_cast<long>(sigmas.size()) > max_rows)
        throw ResourceError("dispersion scan: sigma budget too large");

    DistanceEngine engine(P);
    DispersionReport rep;
    rep.table.resize(sigmas.size());
    parallel_for(sigmas.size(), [&](std::size_t i) {
        rep.table[i] = {sigmas[i], l1_norm(sigmas[i]).get_si(), engine(sigmas[i])};
    });

    long prec = q.precision_bits;
    bool have_min = false;
    double running = 0;
    for (std::size_t i = 0; i < rep.table.size(); ++i) {
        const auto& row = rep.table[i];
        if (row.dist.zero) {
            if (!rep.zero_witness)
                rep.zero_witness = row.sigma;
            continue;
        }
        double ld = log_mid(row.dist.d);
        if (!have_min || ld < running) {
            running = ld;
            have_min = true;
            rep.records.push_back(i);
        }
    }

    // certified minima: the true minimum lies in [min lo, min hi]
    auto certified_min = [&](auto value) {
        Interval best(prec);
        std::vector<Integer> arg;
        bool first = true;
        Rational lo, hi;
        for (const auto& row : rep.table) {
            Interval v = value(row);
            Rational vl = v.lo_rational(), vh = v.hi_rational();
            if (first || vl < lo)
                lo = vl;
            if (first || vh < hi) {
                hi = vh;
                arg = row.sigma;
            }
            first = false;
        }
        return std::make_pair(Interval(lo, hi, prec), arg);
    };
    for (const auto& a : q.a_grid) {
        Interval inv_a(1 / a, prec);
        auto [m, arg] = certified_min([&](const ScanRow& r) { return r.dist.d * pow(inv_a, r.norm); });
        rep.per_a.push_back({a, m, arg});
    }
    rep.min_norm_times_d =
        certified_min([&](const ScanRow& r) { return r.dist.d * Interval(r.norm, prec); }).first;

    std::vector<double> lx, ly, nx;
    for (auto i : rep.records) {
        lx.push_back(std::log(static_cast<double>(rep.table[i].norm)));
        nx.push_back(static_cast<double>(rep.table[i].norm));
        ly.push_back(log_mid(rep.table[i].dist.d));
    }
    rep.poly_fit = least_squares(lx, ly);
    rep.exp_fit = least_squares(nx, ly);
    for (std::size_t r = 1; r < lx.size(); ++r)
        rep.local_exponents.push_back((ly[r] - ly[r - 1]) / (lx[r] - lx[r - 1]));

    FieldPtr K = P.field();
    int deg = K ? K->degree() : 0;
    double steepest = 0;
    for (double e : rep.local_exponents)
        steepest = std::min(steepest, e);
    double liouville_cut = -(deg >= 2 ? deg : 2) - 2.0;
    if (rep.zero_witness) {
        rep.classification = DispersionClass::rejected_not_cousin;
    } else if (steepest < liouville_cut) {
        rep.classification = DispersionClass::liouville_suspect;
    } else if (rep.poly_fit.valid && (!rep.exp_fit.valid || rep.poly_fit.residual <= rep.exp_fit.residual) &&
               (deg == 0 || rep.poly_fit.slope >= -(deg - 1) - 1)) {
        rep.classification = DispersionClass::strong_consistent;
    } else {
        rep.classification = DispersionClass::weak_only_consistent;
    }
    rep.note = "classification is a heuristic read of the record minima; only a certificate is a proof";

    if (q.with_certificate) {
        rep.certificate = liouville_certificate(P, q.a_grid);
        const auto& c = *rep.certificate;
        for (const auto& row : rep.table) {
            Interval lhs = row.dist.d * pow(Interval(row.norm + 1, prec), static_cast<unsigned long>(-c.A));
            if (!(lhs.lo_rational() >= c.C))
                throw std::logic_error("liouville certificate violated by the scan");
        }
    }
    return rep;
}

TowerReport tower_alpha_check(int base, const Integer& q_max, std::size_t sample_count, unsigned long seed,
                              long precision_bits) {
    if (base < 2)
        throw SchemaError("tower base must be >= 2");
    TowerReport rep;
    rep.base = base;
    rep.u.push_back(1);
    while (rep.u.back() <= (1 << 20)) {
        unsigned long e = rep.u.back().get_ui();
        rep.u.push_back(pow_int(Integer(base), e));
    }
    int J = static_cast<int>(rep.u.size()) - 1;
    if (q_max >= rep.u[J])
        throw ResourceError("tower check: q_max must stay below u_" + std::to_string(J) + " = " +
                            (rep.u[J].get_str().size() > 30 ? std::string("(huge)") : rep.u[J].get_str()));
    if (q_max < rep.u[1])
        throw SchemaError("tower check: q_max must be at least u_1");
    // The tail sum_{j > J} 1/u_j is below 2/u_{J+1} <= 2^(1 - u_J). u_J has at
    // most 2^20 bits, so 2^20 + 64 bits of tail already sit far below 1/u_J.
    long level_bits = std::max<long>(precision_bits, (1L << 20) + 64);
    rep.tail_exponent = rep.u[J] < level_bits ? rep.u[J].get_si() : level_bits;
    auto tail_bound = [](long E) { return Rational(Integer(1), pow_int(Integer(2), static_cast<unsigned long>(E - 1))); };
    Rational tail_hi = tail_bound(rep.tail_exponent);
    // samples only need a tail small against 1/u_{k+1}; a looser bound keeps them cheap
    Rational sample_tail = tail_bound(std::min(rep.tail_exponent, precision_bits));

    std::vector<Rational> partial(J + 2, Rational(0)); // partial[k] = sum_{j > k, j <= J} 1/u_j
    for (int k = J - 1; k >= 0; --k)
        partial[k] = partial[k + 1] + Rational(Integer(1), rep.u[k + 1]);
    Rational S = partial[0];

    for (int k = 1; k + 1 <= J; ++k) {
        const Integer& uk = rep.u[k];
        TowerLevel lv;
        lv.k = k;
        lv.u_k = uk;
        Rational lo = Rational(uk) * partial[k];
        Rational hi = lo + Rational(uk) * tail_hi;
        if (hi <= Rational(1, 2)) {
            lv.dist_lo = lo;
            lv.dist_hi = hi;
        } else {
            // generic: distance to the nearest integer of (lo, hi]
            Rational flo = frac_of(lo);
            Rational fhi = flo + (hi - lo);
            lv.dist_lo = std::min(flo, Rational(1 - fhi));
            lv.dist_hi = std::min(fhi, Rational(1 - flo));
            if (lv.dist_lo < 0)
                lv.dist_lo = 0;
        }
        lv.scale = Rational(uk, rep.u[k + 1]);
        lv.scale.canonicalize();
        lv.dist_below_two_scale = lv.dist_hi < 2 * lv.scale;
        Rational five = Rational(Integer(1), pow_int(Integer(5), uk.get_ui()));
        lv.two_scale_below_five = 2 * lv.scale < five;
        lv.dist_below_five = lv.dist_hi < five;
        rep.levels.push_back(lv);
    }

    std::vector<Integer> qs;
    Integer lo_q = rep.u[1];
    Integer range = q_max - lo_q + 1;
    if (range <= Integer(static_cast<unsigned long>(sample_count))) {
        for (Integer q = lo_q; q <= q_max; ++q)
            qs.push_back(q);
        rep.exhaustive = qs.size();
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<unsigned long> pick(0, Integer(range - 1).get_ui());
        std::set<Integer> chosen;
        for (int k = 1; k <= J && rep.u[k] <= q_max; ++k)
            chosen.insert(rep.u[k]);
        while (chosen.size() < sample_count)
            chosen.insert(lo_q + Integer(pick(rng)));
        qs.assign(chosen.begin(), chosen.end());
    }

    rep.samples.resize(qs.size());
    parallel_for(qs.size(), [&](std::size_t idx) {
        const Integer& q = qs[idx];
        TowerSample s;
        s.q = q;
        s.k = 1;
        while (s.k + 1 <= J && rep.u[s.k + 1] <= q)
            ++s.k;
        Rational f = frac_of(Rational(q) * S);
        s.frac_lo = f;
        s.frac_hi = f + Rational(q) * sample_tail;
        Rational bound_lo(Integer(1), rep.u[s.k + 1]);
        Rational bound_hi(Integer(base - 1), Integer(base) * rep.u[s.k + 1]);
        bound_hi.canonicalize();
        bool fits = s.frac_hi < 1;
        s.lower_ok = fits && s.frac_lo >= bound_lo;
        s.upper_ok = fits && 1 - s.frac_hi >= bound_hi;
        rep.samples[idx] = std::move(s);
    });
    for (const auto& s : rep.samples)
        rep.weak_bounds_ok = rep.weak_bounds_ok && s.lower_ok && s.upper_ok;
    return rep;
}

} // namespace cousinlab
