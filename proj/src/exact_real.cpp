#include "cousinlab/exact_real.hpp"

#include "cousinlab/errors.hpp"

#include <map>
#include <mutex>

namespace cousinlab {

FieldPtr field_for(const Poly& minpoly) {
    static std::mutex mu;
    static std::map<std::string, FieldPtr> registry;
    Poly f = minpoly.primitive();
    std::string key = f.to_string();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(key);
        if (it != registry.end())
            return it->second;
    }
    // built outside the lock: construction isolates roots
    FieldPtr K = NumberField::make(f);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = registry.emplace(key, K);
    return it->second;
}

ExactReal::ExactReal(const FieldElement& x, int real_index) {
    if (real_index < 1 || real_index > x.field()->s())
        throw PreconditionError("ExactReal needs a real embedding index");
    *this = collapse(x, real_index);
}

ExactReal ExactReal::collapse(FieldElement x, int emb) {
    ExactReal r;
    if (x.is_rational()) {
        r.q_ = x.rational_value();
        return r;
    }
    r.x_ = std::move(x);
    r.emb_ = emb;
    return r;
}

ExactReal ExactReal::from_algebraic(const AlgebraicReal& a) {
    if (a.is_rational())
        return ExactReal(a.as_rational());
    FieldPtr K = field_for(a.minpoly());
    return collapse(K->theta(), K->real_index_in(a.lo(), a.hi()));
}

namespace {

// Lift both operands into a common representation.
struct Pair {
    FieldElement a, b;
    int emb;
};

Pair lift(const ExactReal& a, const ExactReal& b) {
    if (a.is_rational() && b.is_rational())
        throw std::logic_error("lift of two rationals");
    if (!a.is_rational() && !b.is_rational()) {
        if (!same_field(a.field(), b.field()) || a.embedding() != b.embedding())
            throw PreconditionError("incommensurable algebraic entries (different fields or embeddings)");
        return {a.element(), b.element(), a.embedding()};
    }
    if (a.is_rational())
        return {b.field()->from_rational(a.rational()), b.element(), b.embedding()};
    return {a.element(), a.field()->from_rational(b.rational()), a.embedding()};
}

} // namespace

ExactReal ExactReal::operator-() const {
    if (is_rational())
        return ExactReal(Rational(-q_));
    return collapse(-*x_, emb_);
}

ExactReal operator+(const ExactReal& a, const ExactReal& b) {
    if (a.is_rational() && b.is_rational())
        return ExactReal(Rational(a.q_ + b.q_));
    auto p = lift(a, b);
    return ExactReal::collapse(p.a + p.b, p.emb);
}

ExactReal operator-(const ExactReal& a, const ExactReal& b) { return a + (-b); }

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
    if (a.is_rational() && b.is_rational())
        return ExactReal(Rational(a.q_ * b.q_));
    if (a.is_rational())
        return a.q_ == 0 ? ExactReal(0) : ExactReal::collapse(a.q_ * b.element(), b.emb_);
    if (b.is_rational())
        return b.q_ == 0 ? ExactReal(0) : ExactReal::collapse(b.q_ * a.element(), a.emb_);
    auto p = lift(a, b);
    return ExactReal::collapse(p.a * p.b, p.emb);
}

ExactReal ExactReal::inverse() const {
    if (is_zero())
        throw std::domain_error("inverse of zero");
    if (is_rational())
        return ExactReal(Rational(1 / q_));
    return collapse(x_->inverse(), emb_);
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) { return a * b.inverse(); }

bool operator==(const ExactReal& a, const ExactReal& b) { return (a - b).is_zero(); }

bool ExactReal::is_zero() const { return is_rational() && q_ == 0; }

Sign ExactReal::sign() const {
    if (is_rational())
        return static_cast<Sign>(sgn(q_));
    return x_->real_sign(emb_);
}

Integer ExactReal::floor() const {
    if (is_rational())
        return floor_of(q_);
    // an irrational value is never an integer, so the loop ends
    for (long bits = 64; bits <= PrecisionPolicy::global().cap_bits; bits *= 2) {
        Interval v = interval(bits);
        Integer lo = floor_of(v.lo_rational()), hi = floor_of(v.hi_rational());
        if (lo == hi)
            return lo;
    }
    throw PrecisionCapError("floor undecided at precision cap");
}

Integer ExactReal::round_half_even() const {
    if (is_rational())
        return cousinlab::round_half_even(q_);
    return (*this + ExactReal(Rational(1, 2))).floor();
}

Interval ExactReal::interval(long bits) const {
    if (is_rational()) {
        long mag = static_cast<long>(mpz_sizeinbase(q_.get_num_mpz_t(), 2));
        return Interval(q_, bits + mag + 8);
    }
    return x_->embed_real(emb_, bits);
}

double ExactReal::approx() const { return interval(64).mid_double(); }

std::string ExactReal::to_string() const {
    if (is_rational())
        return q_.get_str();
    std::string s = "[";
    for (std::size_t i = 0; i < x_->coords().size(); ++i)
        s += (i ? "," : "") + x_->coords()[i].get_str();
    return s + "]@" + std::to_string(emb_) + " in Q[x]/(" + x_->field()->minpoly().to_string() + ")";
}

} // namespace cousinlab
