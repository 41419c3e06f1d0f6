#include "cousinlab/ot_invariants.hpp"

#include "cousinlab/errors.hpp"
#include "cousinlab/linalg.hpp"
#include "cousinlab/parallel.hpp"

#include <algorithm>

namespace cousinlab {

namespace {

std::vector<std::vector<int>> all_subsets_sorted(int lo, int hi) {
    int n = hi - lo + 1;
    std::vector<std::vector<int>> out;
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                s.push_back(lo + i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void k_subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n; ++i) {
        cur.push_back(i);
        k_subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// the unique integer in [lo, hi], if the interval pins one down
std::optional<Integer> pinned_integer(const Interval& x) {
    Integer c = ceil_of(x.lo_rational()), f = floor_of(x.hi_rational());
    if (c != f || x.width_double() >= 1)
        return std::nullopt;
    return c;
}

long binom(long n, long k) {
    if (k < 0 || k > n)
        return 0;
    return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)).get_si();
}

} // namespace

void validate(const OTDatum& d) {
    if (!d.field)
        throw SchemaError("datum has no field");
    if (d.s() < 1 || d.t() < 1)
        throw PreconditionError("an OT datum needs s >= 1 real and t >= 1 complex places, got s = " +
                                std::to_string(d.s()) + ", t = " + std::to_string(d.t()));
    if (static_cast<int>(d.units.size()) != d.s())
        throw PreconditionError("expected s = " + std::to_string(d.s()) + " unit generators, got " +
                                std::to_string(d.units.size()));
    for (std::size_t i = 0; i < d.units.size(); ++i) {
        const auto& u = d.units[i];
        std::string name = "unit " + std::to_string(i + 1);
        if (!same_field(u.field(), d.field))
            throw PreconditionError(name + " lies in a different field");
        if (!is_unit(u))
            throw PreconditionError(name + " is not a unit");
        if (!is_totally_positive(u))
            throw PreconditionError(name + " is not totally positive");
    }
    Decision r = log_rank_check(d.units, d.s());
    if (r != Decision::yes)
        throw PreconditionError(std::string("log rank check of the units: ") + to_string(r));
    if (d.lattice) {
        int deg = d.field->degree();
        const auto& L = *d.lattice;
        if (static_cast<int>(L.size()) != deg)
            throw SchemaError("lattice needs s + 2t basis vectors");
        for (const auto& row : L)
            if (static_cast<int>(row.size()) != deg)
                throw SchemaError("lattice vectors need one coordinate per power of theta");
        auto inv = inverse(L);
        if (!inv)
            throw PreconditionError("lattice basis has rank below s + 2t");
        for (std::size_t i = 0; i < d.units.size(); ++i)
            for (std::size_t b = 0; b < L.size(); ++b) {
                auto img = (d.units[i] * d.field->element(L[b])).coords();
                img.resize(deg, Rational(0));
                // coordinates of the image in the lattice basis: img * L^{-1}
                for (int c = 0; c < deg; ++c) {
                    Rational x = 0;
                    for (int k = 0; k < deg; ++k)
                        x += img[k] * (*inv)[k][c];
                    if (x.get_den() != 1)
                        throw PreconditionError("lattice is not stable under unit " + std::to_string(i + 1));
                }
            }
    }
}

std::vector<int> embedding_set(int s, int t, const CharacterSpec& c) {
    std::vector<int> S;
    for (int i : c.I) {
        if (i < 1 || i > s + t)
            throw SchemaError("character index I out of range");
        S.push_back(i);
    }
    for (int j : c.J) {
        if (j < 1 || j > t)
            throw SchemaError("character index J out of range");
        S.push_back(s + t + j);
    }
    std::sort(S.begin(), S.end());
    if (std::adjacent_find(S.begin(), S.end()) != S.end())
        throw SchemaError("character indices repeat");
    return S;
}

CharacterOracle::CharacterOracle(OTDatum d) : d_(std::move(d)) {}

const Poly& CharacterOracle::subset_product_poly(std::size_t unit, int k) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = polys_.find({unit, k});
        if (it != polys_.end())
            return it->second;
    }
    const FieldElement& u = d_.units[unit];
    int deg = d_.field->degree();
    std::vector<std::vector<int>> subs;
    std::vector<int> cur;
    k_subsets(deg, k, 1, cur, subs);
    std::optional<Poly> result;
    for (long bits = 128; bits <= PrecisionPolicy::global().cap_bits && !result; bits *= 2) {
        std::vector<ComplexInterval> conj;
        for (int i = 1; i <= deg; ++i)
            conj.push_back(u.embed(i, bits));
        long prec = bits + 64;
        std::vector<ComplexInterval> coef{ComplexInterval(Interval(Rational(1), prec), Interval(Rational(0), prec))};
        for (const auto& T : subs) {
            ComplexInterval r = conj[T[0] - 1];
            for (std::size_t a = 1; a < T.size(); ++a)
                r *= conj[T[a] - 1];
            std::vector<ComplexInterval> next(coef.size() + 1,
                                              ComplexInterval(Interval(Rational(0), prec), Interval(Rational(0), prec)));
            for (std::size_t i = 0; i < coef.size(); ++i) {
                next[i + 1] += coef[i];
                next[i] = next[i] - r * coef[i];
            }
            coef = std::move(next);
        }
        // symmetric functions of the conjugates of an algebraic integer are integers
        std::vector<Integer> ints;
        bool ok = true;
        for (const auto& c : coef) {
            auto z = pinned_integer(c.re);
            if (!z || !c.im.contains_zero() || c.im.width_double() >= 1) {
                ok = false;
                break;
            }
            ints.push_back(*z);
        }
        if (ok)
            result = Poly::from_bigints(ints);
    }
    if (!result)
        throw PrecisionCapError("conjugate product polynomial: precision cap reached");
    std::lock_guard<std::mutex> lock(mu_);
    return polys_.emplace(std::make_pair(unit, k), std::move(*result)).first->second;
}

bool CharacterOracle::unit_product_is_one(std::size_t unit, const std::vector<int>& S) {
    if (S.empty())
        return true;
    // v - 1 is a root of Q(y) = P(y + 1); either v = 1 or |v - 1| is at least
    // the root bound of Q with its zero roots removed
    Poly Q = subset_product_poly(unit, static_cast<int>(S.size())).shift(Rational(1));
    auto [mult, Q0] = Q.strip_zero_roots();
    if (mult == 0)
        return false;
    if (Q0.degree() == 0)
        return true;
    Rational sep = Q0.root_lower_bound();
    const FieldElement& u = d_.units[unit];
    for (long bits = 128; bits <= PrecisionPolicy::global().cap_bits; bits *= 2) {
        ComplexInterval v = u.embed(S[0], bits);
        for (std::size_t a = 1; a < S.size(); ++a)
            v *= u.embed(S[a], bits);
        long prec = v.precision();
        ComplexInterval w = v - ComplexInterval(Interval(Rational(1), prec), Interval(Rational(0), prec));
        if (w.abs().hi_rational() < sep)
            return true;
        if (w.excludes_zero())
            return false;
    }
    throw PrecisionCapError("character triviality: precision cap reached");
}

bool CharacterOracle::product_is_one(const std::vector<int>& S) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(S);
        if (it != memo_.end())
            return it->second;
    }
    bool one = true;
    for (std::size_t i = 0; i < d_.units.size() && one; ++i)
        one = unit_product_is_one(i, S);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(S, one);
    return one;
}

bool CharacterOracle::is_trivial(const CharacterSpec& c) { return product_is_one(embedding_set(d_.s(), d_.t(), c)); }

long CharacterOracle::n_triv(int p, int j) {
    int s = d_.s(), t = d_.t();
    if (p < 0 || p > s + t || j < 0 || j > t)
        return 0;
    long count = 0;
    for (const auto& c : trivial_characters())
        if (static_cast<int>(c.I.size()) == p && static_cast<int>(c.J.size()) == j)
            ++count;
    return count;
}

std::vector<CharacterSpec> CharacterOracle::trivial_characters() {
    int s = d_.s(), t = d_.t();
    auto Is = all_subsets_sorted(1, s + t), Js = all_subsets_sorted(1, t);
    std::vector<CharacterSpec> specs;
    for (const auto& I : Is)
        for (const auto& J : Js)
            specs.push_back({I, J});
    std::vector<char> flag(specs.size(), 0);
    parallel_for(specs.size(), [&](std::size_t i) { flag[i] = is_trivial(specs[i]) ? 1 : 0; });
    std::vector<CharacterSpec> out;
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (flag[i])
            out.push_back(specs[i]);
    return out;
}

bool character_is_trivial(const OTDatum& d, const CharacterSpec& c) {
    CharacterOracle o(d);
    return o.is_trivial(c);
}

const char* to_string(SimpleType s) { return s == SimpleType::certified_simple ? "certified_simple" : "undetermined"; }

std::vector<std::vector<long>> hodge_diamond(CharacterOracle& o) {
    int s = o.datum().s(), t = o.datum().t(), n = s + t;
    std::vector<std::vector<long>> nt(n + 1, std::vector<long>(t + 1, 0));
    for (const auto& c : o.trivial_characters())
        ++nt[c.I.size()][c.J.size()];
    std::vector<std::vector<long>> h(n + 1, std::vector<long>(n + 1, 0));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            for (int j = 0; j <= t && j <= q; ++j)
                h[p][q] += binom(s, q - j) * nt[p][j];
    return h;
}

std::vector<long> betti(CharacterOracle& o) {
    int s = o.datum().s(), t = o.datum().t(), d = s + 2 * t;
    // trivial subsets of all embeddings by size; every subset is some I u (s+t+J)
    std::vector<long> T(d + 1, 0);
    for (const auto& c : o.trivial_characters())
        ++T[c.I.size() + c.J.size()];
    std::vector<long> b(2 * s + 2 * t + 1, 0);
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= s; ++q)
            b[p + q] += binom(s, q) * T[p];
    return b;
}

bool check_condition_C(CharacterOracle& o) {
    int s = o.datum().s(), t = o.datum().t();
    auto triv = o.trivial_characters();
    if (triv.size() != 2)
        return false;
    CharacterSpec full;
    for (int i = 1; i <= s + t; ++i)
        full.I.push_back(i);
    for (int j = 1; j <= t; ++j)
        full.J.push_back(j);
    return triv[0] == CharacterSpec{} && triv[1] == full;
}

std::pair<bool, std::vector<std::pair<long, long>>> verify_hodge_decomposition(CharacterOracle& o) {
    auto h = hodge_diamond(o);
    auto b = betti(o);
    int n = static_cast<int>(h.size()) - 1;
    std::vector<std::pair<long, long>> table;
    bool ok = true;
    for (int l = 0; l <= 2 * n; ++l) {
        long sum = 0;
        for (int p = std::max(0, l - n); p <= std::min(l, n); ++p)
            sum += h[p][l - p];
        table.emplace_back(sum, b[l]);
        ok = ok && sum == b[l];
    }
    return {ok, table};
}

SimpleType simple_type_probe(const OTDatum& d, std::string* witness) {
    int deg = d.field->degree();
    std::size_t k = d.units.size();
    for (std::size_t i = 0; i < k; ++i)
        if (d.units[i].minpoly().degree() == deg) {
            if (witness)
                *witness = "u" + std::to_string(i + 1);
            return SimpleType::certified_simple;
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if ((d.units[i] * d.units[j]).minpoly().degree() == deg) {
                if (witness)
                    *witness = "u" + std::to_string(i + 1) + "*u" + std::to_string(j + 1);
                return SimpleType::certified_simple;
            }
    return SimpleType::undetermined;
}

HodgeReport hodge_report(const OTDatum& d) {
    validate(d);
    CharacterOracle o(d);
    HodgeReport rep;
    rep.s = d.s();
    rep.t = d.t();
    rep.trivial = o.trivial_characters();
    rep.h = hodge_diamond(o);
    rep.b = betti(o);
    auto [ok, table] = verify_hodge_decomposition(o);
    rep.decomposition_ok = ok;
    rep.per_degree = table;
    rep.condition_C = check_condition_C(o);
    int s = rep.s, t = rep.t, n = s + t;
    rep.complement_symmetric = true;
    for (int p = 0; p <= n; ++p)
        for (int j = 0; j <= t; ++j)
            rep.complement_symmetric = rep.complement_symmetric && o.n_triv(p, j) == o.n_triv(n - p, t - j);
    if (!rep.complement_symmetric)
        rep.notes.push_back("trivial-character counts are not symmetric under complement");
    std::string w;
    rep.simple_type = simple_type_probe(d, &w);
    if (rep.simple_type == SimpleType::certified_simple) {
        rep.simple_witness = w;
        rep.simple_consequences_ok = rep.h[2][0] == 0 && rep.h[1][1] == 0 && rep.h[0][2] == binom(s, 2);
    }
    if (rep.h[0][1] != s)
        rep.notes.push_back("h^{0,1} differs from s");
    rep.notes.push_back("admissibility of the unit group is not re-derived; only unit, positivity, rank and "
                        "lattice stability are checked");
    return rep;
}

} // namespace cousinlab
