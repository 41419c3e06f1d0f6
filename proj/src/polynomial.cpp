#include "cousinlab/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cousinlab {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, int deg) {
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

Poly Poly::from_integers(const std::vector<long>& coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs)
        v.emplace_back(c);
    return Poly(std::move(v));
}

Poly Poly::from_bigints(const std::vector<Integer>& coeffs) {
    std::vector<Rational> v;
    for (const auto& c : coeffs)
        v.emplace_back(c);
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] += b.c_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& b) {
    if (s == 0)
        return {};
    Poly r = b;
    for (auto& c : r.c_)
        c *= s;
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const {
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = c_;
    int db = b.degree();
    int dr = degree();
    if (dr < db)
        return {Poly(), *this};
    std::vector<Rational> q(dr - db + 1);
    Rational inv_lc = 1 / b.lc();
    for (int k = dr; k >= db; --k) {
        if (r[k] == 0)
            continue;
        Rational f = r[k] * inv_lc;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j)
            r[k - db + j] -= f * b.c_[j];
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::derivative() const {
    if (c_.size() <= 1)
        return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        v[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero())
        return {};
    return (1 / lc()) * *this;
}

Poly Poly::compose(const Poly& q) const {
    Poly r;
    for (int i = degree(); i >= 0; --i)
        r = r * q + constant(c_[i]);
    return r;
}

Poly Poly::negate_var() const {
    Poly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2)
        r.c_[i] = -r.c_[i];
    return r;
}

Poly Poly::reversed() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return Poly(std::move(v));
}

Poly Poly::shift(const Rational& r) const { return compose(Poly({r, Rational(1)})); }

Poly Poly::squarefree() const {
    if (degree() <= 0)
        return *this;
    return (*this / gcd(*this, derivative())).monic();
}

Poly Poly::primitive() const {
    if (is_zero())
        return {};
    Integer den = 1;
    for (const auto& c : c_)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> ints;
    for (const auto& c : c_) {
        Integer v = c.get_num() * (den / c.get_den());
        ints.push_back(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (lc() < 0)
        g = -g;
    std::vector<Rational> v;
    for (auto& z : ints)
        v.emplace_back(Integer(z / g));
    return Poly(std::move(v));
}

bool Poly::has_integer_coeffs() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

std::vector<Integer> Poly::integer_coeffs() const {
    std::vector<Integer> v;
    for (const auto& c : c_) {
        if (c.get_den() != 1)
            throw std::logic_error("integer_coeffs on non-integral polynomial");
        v.push_back(c.get_num());
    }
    return v;
}

std::pair<int, Poly> Poly::strip_zero_roots() const {
    if (is_zero())
        return {0, Poly()};
    int k = 0;
    while (c_[k] == 0)
        ++k;
    return {k, Poly(std::vector<Rational>(c_.begin() + k, c_.end()))};
}

Rational Poly::eval(const Rational& x) const {
    Rational r = 0;
    for (int i = degree(); i >= 0; --i)
        r = r * x + c_[i];
    return r;
}

Interval Poly::eval(const Interval& x) const {
    long p = x.precision();
    Interval r(p);
    for (int i = degree(); i >= 0; --i)
        r = r * x + Interval(c_[i], p);
    return r;
}

ComplexInterval Poly::eval(const ComplexInterval& z) const {
    long p = z.precision();
    ComplexInterval r(p);
    for (int i = degree(); i >= 0; --i) {
        r = r * z;
        r.re += Interval(c_[i], p);
    }
    return r;
}

Rational Poly::cauchy_bound() const {
    if (degree() < 1)
        return 1;
    Rational m = 0;
    for (int i = 0; i < degree(); ++i)
        m = std::max(m, abs_of(c_[i] / lc()));
    return 1 + m;
}

Rational Poly::root_lower_bound() const {
    if (is_zero() || c_[0] == 0)
        throw std::domain_error("root_lower_bound needs p(0) != 0");
    Rational m = 0;
    for (int i = 1; i <= degree(); ++i)
        m = std::max(m, abs_of(c_[i]));
    Rational c0 = abs_of(c_[0]);
    return c0 / (c0 + m);
}

std::string Poly::to_string(const char* var) const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0)
            continue;
        Rational c = c_[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Rational a = abs_of(c);
        if (a != 1 || i == 0)
            os << a.get_str();
        if (i > 0)
            os << var;
        if (i > 1)
            os << "^" << i;
        first = false;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Bezout ext_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(1), s1;
    Poly t0, t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {};
    Rational inv = 1 / r0.lc();
    return {inv * r0, inv * s0, inv * t0};
}

Rational resultant(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return 0;
    int m = a.degree(), n = b.degree();
    if (n == 0) {
        Rational r = 1;
        for (int i = 0; i < m; ++i)
            r *= b.lc();
        return r;
    }
    if (m == 0) {
        Rational r = 1;
        for (int i = 0; i < n; ++i)
            r *= a.lc();
        return r;
    }
    Poly r = a % b;
    if (r.is_zero())
        return 0;
    Rational f = ((m * n) % 2 == 0) ? Rational(1) : Rational(-1);
    for (int i = 0; i < m - r.degree(); ++i)
        f *= b.lc();
    return f * resultant(b, r);
}

Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    Poly r = Poly::constant(dd[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;)
        r = r * Poly({-xs[k], Rational(1)}) + Poly::constant(dd[k]);
    return r;
}

namespace {

// Evaluates t -> resultant_y(build(t), q) on deg+1 integer nodes.
template <class Build>
Poly resultant_in_t(int deg, const Poly& q, Build build) {
    std::vector<Rational> xs, ys;
    for (int k = 0; k <= deg; ++k) {
        Rational t(k - deg / 2);
        xs.push_back(t);
        ys.push_back(resultant(build(t), q));
    }
    return interpolate(xs, ys);
}

} // namespace

Poly root_sum_poly(const Poly& p, const Poly& q) {
    int deg = p.degree() * q.degree();
    // y -> p(t - y)
    Poly neg_y = p.negate_var();
    return resultant_in_t(deg, q, [&](const Rational& t) { return neg_y.shift(-t); });
}

Poly root_product_poly(const Poly& p, const Poly& q) {
    if (p.coeff(0) == 0 || q.coeff(0) == 0)
        throw std::domain_error("root_product_poly needs nonzero constant terms");
    int dp = p.degree();
    int deg = dp * q.degree();
    // y -> y^dp p(t/y) = sum c_i t^i y^(dp-i)
    return resultant_in_t(deg, q, [&](const Rational& t) {
        std::vector<Rational> v(dp + 1);
        Rational tp = 1;
        for (int i = 0; i <= dp; ++i) {
            v[dp - i] = p.coeff(i) * tp;
            tp *= t;
        }
        return Poly(std::move(v));
    });
}

SturmSequence::SturmSequence(const Poly& p) {
    seq_.push_back(p);
    seq_.push_back(p.derivative());
    while (!seq_.back().is_zero()) {
        Poly r = -(seq_[seq_.size() - 2] % seq_.back());
        seq_.push_back(std::move(r));
    }
    seq_.pop_back();
}

int SturmSequence::variations(const Rational& x) const {
    int v = 0, last = 0;
    for (const auto& p : seq_) {
        Rational y = p.eval(x);
        int s = sgn(y);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

int SturmSequence::variations_at_infinity(bool positive) const {
    int v = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sgn(p.lc());
        if (!positive && p.degree() % 2 == 1)
            s = -s;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

int SturmSequence::count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

int SturmSequence::count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

} // namespace cousinlab
