#include "cousinlab/algebraic.hpp"

#include "cousinlab/errors.hpp"
#include "cousinlab/roots.hpp"

#include <climits>
#include <utility>

namespace cousinlab {

namespace {

int sign_at(const Poly& f, const Rational& x) { return sgn(f.eval(x)); }

// Bits needed to represent |x| above the binary point.
long magnitude_bits(const Rational& x) {
    if (x == 0)
        return 0;
    long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) + 1;
    return e > 0 ? e : 0;
}

Rational pow2(long e) {
    Rational r = 1;
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -e);
    return r;
}

Rational mpfr_to_rational(mpfr_srcptr x) {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

// Newton iteration in floating point; the returned value is only a guess.
Rational newton_guess(const Poly& f, const Rational& start, long bits) {
    Poly df = f.derivative();
    long prec = 96;
    mpfr_t x, fx, dfx, c;
    mpfr_init2(x, bits + 64);
    mpfr_init2(fx, bits + 64);
    mpfr_init2(dfx, bits + 64);
    mpfr_init2(c, bits + 64);
    mpfr_set_q(x, start.get_mpq_t(), MPFR_RNDN);
    auto horner = [&](const Poly& p, mpfr_t out) {
        mpfr_set_zero(out, 1);
        for (int i = p.degree(); i >= 0; --i) {
            mpfr_mul(out, out, x, MPFR_RNDN);
            mpfr_set_q(c, p.coeff(i).get_mpq_t(), MPFR_RNDN);
            mpfr_add(out, out, c, MPFR_RNDN);
        }
    };
    for (;;) {
        prec = std::min(prec * 2, bits + 64);
        mpfr_prec_round(x, prec, MPFR_RNDN);
        mpfr_set_prec(fx, prec);
        mpfr_set_prec(dfx, prec);
        mpfr_set_prec(c, prec);
        for (int k = 0; k < 2; ++k) {
            horner(f, fx);
            horner(df, dfx);
            mpfr_div(fx, fx, dfx, MPFR_RNDN);
            mpfr_sub(x, x, fx, MPFR_RNDN);
        }
        if (prec >= bits + 64)
            break;
    }
    Rational r = mpfr_to_rational(x);
    mpfr_clear(x);
    mpfr_clear(fx);
    mpfr_clear(dfx);
    mpfr_clear(c);
    return r;
}

} // namespace

AlgebraicReal::AlgebraicReal(const Poly& minpoly, const Rational& lo, const Rational& hi)
    : minpoly_(minpoly.primitive()), lo_(lo), hi_(hi) {
    if (minpoly_.degree() < 1)
        throw PreconditionError("minimal polynomial must be nonconstant");
    if (lo > hi)
        throw PreconditionError("isolating interval has lo > hi");
    if (!is_irreducible(minpoly_))
        throw PreconditionError("reducible minimal polynomial " + minpoly_.to_string());
    SturmSequence sturm(minpoly_);
    int count = sturm.count(lo, hi) + (minpoly_.eval(lo) == 0 ? 1 : 0);
    if (count != 1)
        throw PreconditionError("interval [" + lo.get_str() + ", " + hi.get_str() + "] holds " +
                                std::to_string(count) + " roots of " + minpoly_.to_string());
    if (is_rational()) {
        lo_ = hi_ = as_rational();
    }
    sign_lo_ = sign_at(minpoly_, lo_);
}

AlgebraicReal AlgebraicReal::rational(const Rational& r) {
    AlgebraicReal a;
    a.minpoly_ = Poly({-r, Rational(1)}).primitive();
    a.lo_ = a.hi_ = r;
    return a;
}

AlgebraicReal AlgebraicReal::isolate(const Poly& f, const SturmSequence& sturm, int index) {
    Rational b = f.cauchy_bound();
    Rational lo = -b, hi = b;
    int skip = index;
    // bisect until (lo, hi] holds exactly the wanted root
    while (sturm.count(lo, hi) != 1) {
        Rational mid = (lo + hi) / 2;
        int left = sturm.count(lo, mid);
        if (skip < left) {
            hi = mid;
        } else {
            skip -= left;
            lo = mid;
        }
    }
    AlgebraicReal a;
    a.minpoly_ = f;
    a.lo_ = lo;
    a.hi_ = hi;
    a.sign_lo_ = sign_at(f, lo);
    return a;
}

AlgebraicReal AlgebraicReal::real_root(const Poly& minpoly, int index) {
    auto all = all_real_roots(minpoly);
    if (index < 0 || index >= static_cast<int>(all.size()))
        throw PreconditionError("real root index out of range");
    return all[index];
}

std::vector<AlgebraicReal> AlgebraicReal::all_real_roots(const Poly& minpoly) {
    Poly f = minpoly.primitive();
    if (f.degree() < 1)
        throw PreconditionError("minimal polynomial must be nonconstant");
    if (f.degree() == 1)
        return {rational(-f.coeff(0) / f.coeff(1))};
    if (!is_irreducible(f))
        throw PreconditionError("reducible minimal polynomial " + f.to_string());
    SturmSequence sturm(f);
    std::vector<AlgebraicReal> out;
    for (int i = 0, n = sturm.count_all(); i < n; ++i)
        out.push_back(isolate(f, sturm, i));
    return out;
}

Rational AlgebraicReal::as_rational() const {
    if (!is_rational())
        throw std::logic_error("as_rational on irrational algebraic number");
    return -minpoly_.coeff(0) / minpoly_.coeff(1);
}

Interval AlgebraicReal::refine(long target_bits) const {
    if (target_bits < 1)
        throw PreconditionError("refine needs target_bits >= 1");
    long mag = std::max(magnitude_bits(lo_), magnitude_bits(hi_));
    long prec = target_bits + mag + 8;
    if (is_rational())
        return Interval(lo_, prec);
    Rational a = lo_, b = hi_;
    Rational goal = pow2(-target_bits - 1);
    auto bisect_to = [&](const Rational& width) {
        while (b - a > width) {
            Rational m = (a + b) / 2;
            if (sign_at(minpoly_, m) == sign_lo_)
                a = m;
            else
                b = m;
        }
    };
    if (target_bits <= 64) {
        bisect_to(goal);
    } else {
        bisect_to(pow2(-48));
        Rational x = newton_guess(minpoly_, (a + b) / 2, target_bits + 8);
        Rational eps = pow2(-target_bits - 2);
        Rational a2 = x - eps, b2 = x + eps;
        // the sign change inside the isolating interval pins the root
        if (a2 >= a && b2 <= b && sign_at(minpoly_, a2) == sign_lo_ && sign_at(minpoly_, b2) == -sign_lo_) {
            a = a2;
            b = b2;
        } else {
            bisect_to(goal);
        }
    }
    return Interval(a, b, prec);
}

const char* to_string(Sign s) {
    switch (s) {
    case Sign::negative:
        return "negative";
    case Sign::zero:
        return "zero";
    default:
        return "positive";
    }
}

struct RealExpr::Node {
    enum Kind { rat, alg, add, mul, neg } kind;
    Rational q;
    std::shared_ptr<AlgebraicReal> a;
    std::shared_ptr<const Node> l, r;
};

RealExpr::RealExpr(const Rational& q) {
    auto n = std::make_shared<Node>();
    n->kind = Node::rat;
    n->q = q;
    node_ = n;
}

RealExpr::RealExpr(const AlgebraicReal& a) {
    auto n = std::make_shared<Node>();
    if (a.is_rational()) {
        n->kind = Node::rat;
        n->q = a.as_rational();
    } else {
        n->kind = Node::alg;
        n->a = std::make_shared<AlgebraicReal>(a);
    }
    node_ = n;
}

RealExpr operator+(const RealExpr& x, const RealExpr& y) {
    auto n = std::make_shared<RealExpr::Node>();
    n->kind = RealExpr::Node::add;
    n->l = x.node_;
    n->r = y.node_;
    return RealExpr(std::shared_ptr<const RealExpr::Node>(n));
}

RealExpr operator*(const RealExpr& x, const RealExpr& y) {
    auto n = std::make_shared<RealExpr::Node>();
    n->kind = RealExpr::Node::mul;
    n->l = x.node_;
    n->r = y.node_;
    return RealExpr(std::shared_ptr<const RealExpr::Node>(n));
}

RealExpr RealExpr::operator-() const {
    auto n = std::make_shared<Node>();
    n->kind = Node::neg;
    n->l = node_;
    return RealExpr(std::shared_ptr<const Node>(n));
}

RealExpr operator-(const RealExpr& x, const RealExpr& y) { return x + (-y); }

Interval RealExpr::eval(long bits) const {
    long w = bits + 32;
    auto rec = [&](auto& self, const Node& n) -> Interval {
        switch (n.kind) {
        case Node::rat:
            return Interval(n.q, w);
        case Node::alg:
            return n.a->refine(bits);
        case Node::add:
            return self(self, *n.l) + self(self, *n.r);
        case Node::mul:
            return self(self, *n.l) * self(self, *n.r);
        default:
            return -self(self, *n.l);
        }
    };
    return rec(rec, *node_);
}

Poly RealExpr::annihilator(int max_degree) const {
    auto check = [&](Poly p) {
        p = p.squarefree().primitive();
        if (p.degree() > max_degree)
            throw ResourceError("annihilating polynomial degree " + std::to_string(p.degree()) + " exceeds limit");
        return p;
    };
    auto rec = [&](auto& self, const Node& n) -> Poly {
        switch (n.kind) {
        case Node::rat:
            return Poly({-n.q, Rational(1)}).primitive();
        case Node::alg:
            return n.a->minpoly();
        case Node::neg:
            return self(self, *n.l).negate_var().primitive();
        case Node::add: {
            if (n.l->kind == Node::rat)
                return check(self(self, *n.r).shift(-n.l->q));
            if (n.r->kind == Node::rat)
                return check(self(self, *n.l).shift(-n.r->q));
            Poly p = self(self, *n.l), q = self(self, *n.r);
            if (static_cast<long>(p.degree()) * q.degree() > max_degree)
                throw ResourceError("annihilating polynomial degree exceeds limit");
            return check(root_sum_poly(p, q));
        }
        default: {
            Poly p = self(self, *n.l), q = self(self, *n.r);
            auto [kp, p1] = p.strip_zero_roots();
            auto [kq, q1] = q.strip_zero_roots();
            bool zero_root = kp > 0 || kq > 0;
            if (p1.degree() < 1 || q1.degree() < 1)
                return Poly::x();
            if (static_cast<long>(p1.degree()) * q1.degree() > max_degree)
                throw ResourceError("annihilating polynomial degree exceeds limit");
            Poly r = root_product_poly(p1, q1);
            if (zero_root)
                r = r * Poly::x();
            return check(r);
        }
        }
    };
    return check(rec(rec, *node_));
}

Sign sign_certified(const RealExpr& e) {
    const auto& policy = PrecisionPolicy::global();
    bool have_bound = false;
    bool may_be_zero = false;
    long zero_bits = 0; // |value| >= 2^-zero_bits unless value is zero
    for (long bits = policy.start_bits; bits <= policy.cap_bits; bits *= 2) {
        Interval v = e.eval(bits);
        if (v.positive())
            return Sign::positive;
        if (v.negative())
            return Sign::negative;
        if (!have_bound) {
            Poly ann = e.annihilator();
            auto [k, rest] = ann.strip_zero_roots();
            may_be_zero = k > 0;
            if (rest.degree() < 1)
                return Sign::zero; // annihilator is a power of x
            Rational lb = rest.root_lower_bound();
            // 2^-zero_bits <= lb
            zero_bits = static_cast<long>(mpz_sizeinbase(lb.get_den_mpz_t(), 2)) -
                        static_cast<long>(mpz_sizeinbase(lb.get_num_mpz_t(), 2)) + 2;
            have_bound = true;
        }
        if (may_be_zero) {
            // interval within (-2^-zero_bits, 2^-zero_bits) and containing 0
            Rational t = pow2(-zero_bits);
            if (v.lo_rational() > -t && v.hi_rational() < t)
                return Sign::zero;
        }
    }
    throw PrecisionCapError("sign undecided at precision cap");
}

} // namespace cousinlab
