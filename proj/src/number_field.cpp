#include "cousinlab/number_field.hpp"

#include "cousinlab/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cousinlab {

std::shared_ptr<const NumberField> NumberField::make(const Poly& minpoly) {
    return std::shared_ptr<const NumberField>(new NumberField(minpoly));
}

NumberField::NumberField(const Poly& minpoly) : f_(minpoly.primitive()) {
    if (f_.degree() < 2)
        throw PreconditionError("number field needs a defining polynomial of degree >= 2");
    if (gcd(f_, f_.derivative()).degree() > 0)
        throw PreconditionError("defining polynomial has repeated roots: " + f_.to_string());
    roots_ = std::make_unique<RootSet>(f_);
    real_roots_ = AlgebraicReal::all_real_roots(f_); // checks irreducibility
}

int NumberField::real_index_in(const Rational& lo, const Rational& hi) const {
    SturmSequence sturm(f_);
    if (lo > hi || sturm.count(lo, hi) + (f_.eval(lo) == 0 ? 1 : 0) != 1)
        throw PreconditionError("[" + lo.get_str() + ", " + hi.get_str() + "] does not isolate a real root of " +
                                f_.to_string());
    Rational below = -f_.cauchy_bound();
    return sturm.count(below, lo) + 1;
}

FieldElement NumberField::element(std::vector<Rational> coords) const {
    return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement NumberField::from_poly(const Poly& g) const {
    Poly r = reduce(g);
    std::vector<Rational> c(degree());
    for (int i = 0; i <= r.degree(); ++i)
        c[i] = r.coeff(i);
    return element(std::move(c));
}

FieldElement NumberField::from_rational(const Rational& q) const { return from_poly(Poly::constant(q)); }

FieldElement NumberField::theta() const { return from_poly(Poly::x()); }

bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || (a && b && a->minpoly() == b->minpoly()); }

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords) : K_(std::move(field)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) > K_->degree()) {
        *this = K_->from_poly(Poly(c_));
        return;
    }
    c_.resize(K_->degree());
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

namespace {

void require_same(const FieldElement& a, const FieldElement& b) {
    if (!same_field(a.field(), b.field()))
        throw PreconditionError("field elements from different number fields");
}

} // namespace

FieldElement FieldElement::operator-() const {
    auto c = c_;
    for (auto& q : c)
        q = -q;
    return FieldElement(K_, std::move(c));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += b.c_[i];
    return FieldElement(a.K_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return a.K_->from_poly(a.poly() * b.poly());
}

FieldElement operator*(const Rational& q, const FieldElement& b) {
    auto c = b.c_;
    for (auto& x : c)
        x *= q;
    return FieldElement(b.K_, std::move(c));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) { return same_field(a.K_, b.K_) && a.c_ == b.c_; }

FieldElement FieldElement::inverse() const {
    if (is_zero())
        throw std::domain_error("inverse of zero field element");
    Bezout bz = ext_gcd(poly(), K_->minpoly());
    if (bz.g.degree() != 0)
        throw std::logic_error("defining polynomial not irreducible");
    return K_->from_poly(bz.s);
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0)
        return inverse().pow(-e);
    FieldElement r = K_->from_rational(1), base = *this;
    while (e > 0) {
        if (e & 1)
            r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::vector<std::vector<Rational>> FieldElement::mult_matrix() const {
    int d = K_->degree();
    std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d));
    Poly g = poly();
    Poly xj = Poly::constant(1);
    for (int j = 0; j < d; ++j) {
        Poly col = K_->reduce(g * xj);
        for (int i = 0; i < d; ++i)
            M[i][j] = col.coeff(i);
        xj = xj * Poly::x();
    }
    return M;
}

Poly FieldElement::charpoly() const {
    // Faddeev-LeVerrier
    auto A = mult_matrix();
    int n = static_cast<int>(A.size());
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    std::vector<std::vector<Rational>> Mk(n, std::vector<Rational>(n));
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational acc = (i == j) ? c[n - k + 1] : Rational(0);
                for (int l = 0; l < n; ++l)
                    if (A[i][l] != 0 && Mk[l][j] != 0)
                        acc += A[i][l] * Mk[l][j];
                next[i][j] = acc;
            }
        Mk = std::move(next);
        Rational tr = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                tr += A[i][l] * Mk[l][i];
        c[n - k] = -tr / k;
    }
    return Poly(std::move(c));
}

Poly FieldElement::minpoly() const { return charpoly().squarefree(); }

bool FieldElement::is_integral() const { return charpoly().has_integer_coeffs(); }

Rational FieldElement::norm() const {
    Poly g = poly();
    if (g.is_zero())
        return 0;
    Rational r = resultant(K_->minpoly(), g);
    Rational lc = K_->minpoly().lc();
    for (int i = 0; i < g.degree(); ++i)
        r /= lc;
    return r;
}

Rational FieldElement::trace() const { return -charpoly().coeff(K_->degree() - 1); }

ComplexInterval FieldElement::embed(int index, long bits) const {
    int d = K_->degree(), s = K_->s(), t = K_->t();
    if (index < 1 || index > d)
        throw PreconditionError("embedding index out of range");
    if (index > s + t)
        return embed(index - t, bits).conj();
    if (index <= s) {
        Interval re = embed_real(index, bits);
        return {re, Interval(Rational(0), re.precision())};
    }
    if (is_rational())
        return {Interval(c_[0], bits + 64), Interval(Rational(0), bits + 64)};
    Poly g = poly();
    for (long w = bits + 32;; w += w / 2 + 32) {
        ComplexInterval z = K_->roots().box(index - 1, w);
        ComplexInterval v = g.eval(z);
        if (v.re.width_log2() <= -bits && v.im.width_log2() <= -bits)
            return v;
        if (w > PrecisionPolicy::global().cap_bits)
            throw PrecisionCapError("embedding refinement exceeded precision cap");
    }
}

Interval FieldElement::embed_real(int index, long bits) const {
    if (index < 1 || index > K_->s())
        throw PreconditionError("real embedding index out of range");
    if (is_rational()) {
        long mag = static_cast<long>(mpz_sizeinbase(c_[0].get_num_mpz_t(), 2));
        return Interval(c_[0], bits + mag + 8);
    }
    Poly g = poly();
    for (long w = bits + 32;; w += w / 2 + 32) {
        Interval x = K_->roots().box(index - 1, w).re;
        Interval v = g.eval(x);
        if (v.width_log2() <= -bits)
            return v;
        if (w > PrecisionPolicy::global().cap_bits)
            throw PrecisionCapError("embedding refinement exceeded precision cap");
    }
}

Sign FieldElement::real_sign(int index) const {
    if (is_zero())
        return Sign::zero;
    // a nonzero element has nonzero images, so refinement terminates
    for (long bits = 64; bits <= PrecisionPolicy::global().cap_bits; bits *= 2) {
        Interval v = embed_real(index, bits);
        if (v.positive())
            return Sign::positive;
        if (v.negative())
            return Sign::negative;
    }
    throw PrecisionCapError("real embedding sign undecided at precision cap");
}

bool is_unit(const FieldElement& x) {
    if (!x.is_integral())
        throw PreconditionError("is_unit: element is not an algebraic integer");
    return abs_of(x.norm()) == 1;
}

bool is_totally_positive(const FieldElement& x) {
    for (int i = 1; i <= x.field()->s(); ++i)
        if (x.real_sign(i) != Sign::positive)
            return false;
    return true;
}

const char* to_string(Decision d) {
    switch (d) {
    case Decision::yes:
        return "true";
    case Decision::no:
        return "false";
    default:
        return "undecided";
    }
}

namespace {

Interval det_laplace(const std::vector<std::vector<Interval>>& m, std::vector<int>& cols, int row) {
    int n = static_cast<int>(cols.size());
    if (n == 1)
        return m[row][cols[0]];
    long p = m[row][cols[0]].precision();
    Interval acc(p);
    for (int k = 0; k < n; ++k) {
        int c = cols[k];
        std::vector<int> rest;
        for (int j = 0; j < n; ++j)
            if (j != k)
                rest.push_back(cols[j]);
        Interval term = m[row][c] * det_laplace(m, rest, row + 1);
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

bool next_subset(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i)
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    return false;
}

} // namespace

Decision log_rank_check(const std::vector<FieldElement>& gens, int s) {
    if (s == 0)
        return Decision::yes;
    std::vector<FieldElement> live;
    for (const auto& u : gens) {
        if (u.is_rational() && u.rational_value() == 1)
            continue; // exact zero column
        live.push_back(u);
    }
    if (static_cast<int>(live.size()) < s)
        return Decision::no;
    for (const auto& u : live)
        if (u.field()->s() < s)
            throw PreconditionError("log_rank_check: field has fewer than s real embeddings");
    if (s > 8)
        throw ResourceError("log_rank_check limited to s <= 8");
    const auto& policy = PrecisionPolicy::global();
    int r = static_cast<int>(live.size());
    for (long bits = policy.start_bits; bits <= policy.cap_bits; bits *= 2) {
        std::vector<std::vector<Interval>> L(s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < r; ++j) {
                Interval v = live[j].embed_real(i + 1, bits);
                if (!v.positive())
                    throw PreconditionError("log_rank_check: generator not totally positive");
                L[i].push_back(log(v));
            }
        std::vector<int> cols(s);
        std::iota(cols.begin(), cols.end(), 0);
        do {
            std::vector<int> c = cols;
            if (!det_laplace(L, c, 0).contains_zero())
                return Decision::yes;
        } while (next_subset(cols, r));
    }
    return Decision::undecided;
}

} // namespace cousinlab
