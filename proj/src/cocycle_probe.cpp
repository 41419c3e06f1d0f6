#include "cousinlab/cocycle_probe.hpp"

#include "cousinlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cousinlab {

namespace {

void nonneg_compositions(int parts, long total, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long a = 0; a <= total; ++a) {
        cur.push_back(a);
        nonneg_compositions(parts, total - a, cur, out);
        cur.pop_back();
    }
}

ExactReal frac_part(const ExactReal& v) { return v + ExactReal(Rational((-v).round_half_even())); }

// a^y for rational a in (0, 1) and real y >= 0
Interval pow_real(const Rational& a, const Interval& y, long prec) { return exp(y * log(Interval(a, prec))); }

} // namespace

Interval eta_sigma(const PeriodMatrix& P, const std::vector<Integer>& sigma) {
    if (static_cast<int>(sigma.size()) != P.n - P.m)
        throw SchemaError("sigma has the wrong length");
    if (l1_norm(sigma) == 0)
        throw PreconditionError("eta needs sigma != 0");
    std::vector<ExactReal> fr;
    for (const auto& v : sigma_times(sigma, P.R()))
        fr.push_back(frac_part(v));
    for (long bits = 128; bits <= PrecisionPolicy::global().cap_bits; bits *= 2) {
        Interval best(Rational(0), bits);
        bool zero = true;
        for (const auto& f : fr) {
            if (f.is_zero())
                continue;
            zero = false;
            Interval e = Interval(Rational(2), bits) * abs(sin(Interval::pi(bits + 32) * f.interval(bits)));
            best = max(best, e);
        }
        if (zero || (best.positive() && best.relative_width_at_most(32)))
            return best;
    }
    throw PrecisionCapError("eta: precision cap reached");
}

WitnessSequence find_witnesses(const PeriodMatrix& P, const Rational& a, int k_max, long sigma_budget,
                               bool skip_cousin_check) {
    if (!(a > 0 && a < 1))
        throw SchemaError("a must lie strictly inside (0, 1)");
    if (k_max < 1 || sigma_budget < 1)
        throw SchemaError("k_max and the sigma budget must be positive");
    if (!skip_cousin_check && !is_cousin(P).cousin)
        throw PreconditionError("witness search needs a Cousin lattice");
    int r = P.n - P.m;
    DistanceEngine eng(P);
    WitnessSequence best;
    best.a = a;
    best.budget = sigma_budget;
    bool first = true;
    // sigma and -sigma have the same distance, so the first sign is fixed
    for (long mask = 0; mask < (1L << (r - 1)); ++mask) {
        std::vector<int> tag(r, 1);
        for (int i = 1; i < r; ++i)
            tag[i] = (mask >> (i - 1) & 1) ? -1 : 1;
        WitnessSequence w;
        w.a = a;
        w.domain_tag = tag;
        w.budget = sigma_budget;
        Rational aL = 1;
        for (long L = 1; L <= sigma_budget && static_cast<int>(w.items.size()) < k_max; ++L) {
            aL *= a;
            int k = static_cast<int>(w.items.size()) + 1;
            Rational bound = aL / k;
            std::vector<std::vector<long>> comps;
            std::vector<long> cur;
            nonneg_compositions(r, L, cur, comps);
            for (const auto& c : comps) {
                std::vector<Integer> sigma(r);
                for (int i = 0; i < r; ++i)
                    sigma[i] = Integer(tag[i] * c[i]);
                Distance d = eng(sigma);
                if (d.d.hi_rational() < bound) {
                    w.items.push_back({k, sigma, d.tau, L, d.d, Interval(64)});
                    break;
                }
            }
        }
        w.complete = static_cast<int>(w.items.size()) >= k_max;
        if (first || w.items.size() > best.items.size()) {
            best = std::move(w);
            first = false;
        }
    }
    for (auto& it : best.items) {
        it.eta = eta_sigma(P, it.sigma);
        // |e(t) - 1| = 2 |sin(pi t)| <= 2 pi dist(t, Z)
        Interval two_pi_d = Interval(Rational(2), 128) * Interval::pi(128) * it.d;
        if (two_pi_d.certainly_less(it.eta))
            throw std::logic_error("eta exceeds 2 pi d");
    }
    return best;
}

CocycleValue evaluate_cocycle(const PeriodMatrix& P, const Rational& x, const std::vector<Integer>& lambda,
                              const std::vector<ExactComplex>& z, const WitnessSequence& w,
                              std::size_t K_max, long prec) {
    int n = P.n, m = P.m, r = n - m;
    if (!(x > 0 && x < 1))
        throw SchemaError("x must lie strictly inside (0, 1)");
    if (static_cast<int>(lambda.size()) != n + m)
        throw SchemaError("lambda needs one integer per lattice generator");
    if (static_cast<int>(z.size()) != n)
        throw SchemaError("z needs n coordinates");
    if (K_max > w.items.size())
        throw PreconditionError("K_max exceeds the number of witness items");
    for (int i = 0; i < r; ++i) {
        int sgn = w.domain_tag.empty() ? 1 : w.domain_tag[i];
        if ((ExactReal(sgn) * z[m + i].im).sign() != Sign::positive)
            throw PreconditionError("z lies outside the domain of the witness sign pattern");
    }
    // real part of lambda in the last n - m coordinates
    std::vector<ExactReal> lam(r);
    Integer ell = 0;
    for (int j = 0; j < m; ++j)
        ell += abs(lambda[r + j]) + abs(lambda[r + m + j]);
    for (int i = 0; i < r; ++i) {
        ExactReal v(Rational(lambda[i]));
        for (int j = 0; j < m; ++j)
            v += P.R1[i][j] * ExactReal(Rational(lambda[r + j])) + P.R2[i][j] * ExactReal(Rational(lambda[r + m + j]));
        lam[i] = v;
    }
    Interval zero(Rational(0), prec);
    ComplexInterval sum(zero, zero);
    Interval xi(x, prec);
    for (std::size_t k = 0; k < K_max; ++k) {
        const auto& it = w.items[k];
        ExactReal s = 0;
        for (int i = 0; i < r; ++i)
            s += ExactReal(Rational(it.sigma[i])) * lam[i];
        ExactReal f = frac_part(s);
        if (f.is_zero())
            continue;
        ComplexInterval num = exp_two_pi_i(f.interval(prec)) - ComplexInterval(Interval(Rational(1), prec), zero);
        ExactReal re = 0, im = 0;
        for (int i = 0; i < r; ++i) {
            re += ExactReal(Rational(it.sigma[i])) * z[m + i].re;
            im += ExactReal(Rational(it.sigma[i])) * z[m + i].im;
        }
        Interval decay = exp(Interval(-2, prec) * Interval::pi(prec) * im.interval(prec));
        ComplexInterval ez = decay * exp_two_pi_i(frac_part(re).interval(prec));
        Interval coef = pow_real(w.a, xi * Interval(it.norm, prec), prec) / it.eta;
        sum += coef * (num * ez);
    }
    // |e(sigma . lambda'') - 1| <= l(lambda) eta_sigma and |e(sigma . z'')| <= 1
    Interval q = pow_real(w.a, xi, prec);
    long N = K_max == 0 ? 0 : w.items[K_max - 1].norm;
    Interval tail = Interval(Rational(ell), prec) * pow(q, static_cast<unsigned long>(N + 1)) /
                    (Interval(Rational(1), prec) - q);
    return {sum, tail};
}

CocycleReport radius_report(const std::vector<Rational>& xs, const WitnessSequence& w) {
    if (w.items.size() < 10)
        throw PreconditionError("radius estimates need at least 10 witness items, got " +
                                std::to_string(w.items.size()));
    if (xs.empty())
        throw SchemaError("xs must not be empty");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0 && xs[i] < 1))
            throw SchemaError("every x must lie strictly inside (0, 1)");
        if (i > 0 && !(xs[i - 1] < xs[i]))
            throw SchemaError("xs must be strictly increasing");
    }
    CocycleReport rep;
    rep.a = w.a;
    rep.domain_tag = w.domain_tag;
    rep.item_count = w.items.size();
    std::vector<double> roots;
    for (const auto& it : w.items) {
        rep.eta_values.push_back(it.eta);
        double e = it.eta.mid_double();
        roots.push_back(e > 0 ? std::exp(std::log(e) / static_cast<double>(it.norm)) : 0.0);
    }
    auto last = std::vector<double>(roots.end() - 5, roots.end());
    double lo = *std::min_element(last.begin(), last.end());
    double hi = *std::max_element(last.begin(), last.end());
    rep.rho_estimate = lo;
    rep.rho_error = hi - lo;
    double a = w.a.get_d();
    rep.rho_le_a = rep.rho_estimate <= a * (1 + 1e-12);
    for (const auto& x : xs) {
        double s = std::pow(a, -x.get_d());
        rep.radii.push_back({x, s * lo, s * (lo - rep.rho_error), s * (lo + rep.rho_error)});
    }
    rep.radii_increasing = true;
    rep.radii_below_one = true;
    rep.separation_ok = true;
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        rep.radii_below_one = rep.radii_below_one && rep.radii[i].radius < 1;
        if (i > 0) {
            rep.radii_increasing = rep.radii_increasing && rep.radii[i - 1].radius < rep.radii[i].radius;
            for (std::size_t j = 0; j < i; ++j)
                rep.separation_ok = rep.separation_ok && rep.radii[j].hi < rep.radii[i].lo;
        }
    }
    rep.note = "radii are root-test estimates from the last five items, not certified bounds";
    return rep;
}

} // namespace cousinlab
