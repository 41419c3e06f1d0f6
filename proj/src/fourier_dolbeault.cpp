#include "cousinlab/fourier_dolbeault.hpp"

#include "cousinlab/errors.hpp"
#include "cousinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace cousinlab {

bool CharIndex::is_zero() const {
    auto z = [](const std::vector<Integer>& v) {
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    };
    return z(pi) && z(rho) && z(sigma);
}

bool operator<(const CharIndex& a, const CharIndex& b) {
    return std::tie(a.pi, a.rho, a.sigma) < std::tie(b.pi, b.rho, b.sigma);
}

bool operator==(const CharIndex& a, const CharIndex& b) {
    return a.pi == b.pi && a.rho == b.rho && a.sigma == b.sigma;
}

CharIndex zero_character(int n, int m) {
    return {std::vector<Integer>(m, 0), std::vector<Integer>(m, 0), std::vector<Integer>(n - m, 0)};
}

namespace {

void check_shape(const PeriodMatrix& P, const CharIndex& c) {
    if (static_cast<int>(c.pi.size()) != P.m || static_cast<int>(c.rho.size()) != P.m ||
        static_cast<int>(c.sigma.size()) != P.n - P.m)
        throw SchemaError("character index has the wrong shape");
}

// v M for a row vector v
std::vector<ExactReal> row_times(const std::vector<ExactReal>& v, const RealMat& M) {
    std::size_t cols = M.empty() ? 0 : M[0].size();
    std::vector<ExactReal> out(cols, ExactReal(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero())
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            out[j] += v[i] * M[i][j];
    }
    return out;
}

std::vector<ExactReal> to_reals(const std::vector<Integer>& v) {
    std::vector<ExactReal> out;
    for (const auto& z : v)
        out.emplace_back(Rational(z));
    return out;
}

RealMat n_inverse(const PeriodMatrix& P) {
    auto inv = inverse(P.N);
    if (!inv)
        throw PreconditionError("N is singular");
    return *inv;
}

// Sign of moving dzbar_j into the sorted list J, past the p holomorphic factors.
int insertion_sign(int p, const std::vector<int>& J, int j) {
    long before = std::count_if(J.begin(), J.end(), [j](int x) { return x < j; });
    return ((p + before) % 2 == 0) ? 1 : -1;
}

ExactReal frobenius2(const RealMat& a) {
    ExactReal s = 0;
    for (const auto& row : a)
        for (const auto& x : row)
            s += x * x;
    return s;
}

// short dyadic upper bound of sqrt(x), x >= 0
Rational sqrt_upper(const ExactReal& x) {
    if (x.is_zero())
        return 0;
    Interval s = sqrt(x.interval(80));
    return Interval(s.hi_rational(), 64).hi_rational();
}

void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n)
        return out;
    std::vector<int> cur;
    combinations(n, k, 0, cur, out);
    return out;
}

} // namespace

AVector a_vector(const PeriodMatrix& P, const CharIndex& idx) {
    check_shape(P, idx);
    int m = P.m;
    auto pi = to_reals(idx.pi), rho = to_reals(idx.rho), sigma = to_reals(idx.sigma);
    auto sR1 = row_times(sigma, P.R1);
    auto piM = row_times(pi, P.M);
    RealMat R1M_R2 = matmul(P.R1, P.M);
    for (std::size_t i = 0; i < R1M_R2.size(); ++i)
        for (int j = 0; j < m; ++j)
            R1M_R2[i][j] -= P.R2[i][j];
    auto sX = row_times(sigma, R1M_R2);
    std::vector<ExactReal> w(m);
    for (int j = 0; j < m; ++j)
        w[j] = rho[j] - piM[j] + sX[j];
    auto v = row_times(w, n_inverse(P));
    ExactReal half(Rational(1, 2));
    AVector a(m);
    for (int j = 0; j < m; ++j)
        a[j] = ExactComplex(half * (pi[j] - sR1[j]), half * v[j]);
    return a;
}

bool operator<(const FourierPQForm::Key& a, const FourierPQForm::Key& b) {
    return std::tie(a.c, a.I, a.J) < std::tie(b.c, b.I, b.J);
}

FourierPQForm::FourierPQForm(int n, int m, int p, int q, int power) : n_(n), m_(m), p_(p), q_(q), power_(power) {
    if (n < 1 || m < 1 || m > n || p < 0 || p > n || q < -1)
        throw SchemaError("form degree out of range");
}

void FourierPQForm::add(const Key& k, const ExactComplex& c) {
    if (static_cast<int>(k.I.size()) != p_ || static_cast<int>(k.J.size()) != q_)
        throw SchemaError("term degree does not match the form");
    if (!std::is_sorted(k.I.begin(), k.I.end()) || !std::is_sorted(k.J.begin(), k.J.end()) ||
        std::adjacent_find(k.I.begin(), k.I.end()) != k.I.end() ||
        std::adjacent_find(k.J.begin(), k.J.end()) != k.J.end())
        throw SchemaError("wedge indices must be strictly increasing");
    for (int i : k.I)
        if (i < 0 || i >= n_)
            throw SchemaError("holomorphic index out of range");
    for (int j : k.J)
        if (j < 0 || j >= m_)
            throw SchemaError("anti-holomorphic index out of range");
    if (c.is_zero())
        return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

void FourierPQForm::check_compatible(const FourierPQForm& o) const {
    if (n_ != o.n_ || m_ != o.m_ || p_ != o.p_ || q_ != o.q_)
        throw std::invalid_argument("adding forms of different shape or degree");
}

void FourierPQForm::absorb_power(const FourierPQForm& o) {
    if (o.terms_.empty())
        return;
    if (terms_.empty())
        power_ = o.power_;
    else if (power_ != o.power_)
        throw std::invalid_argument("adding forms with different powers of 2 pi i");
}

FourierPQForm& FourierPQForm::operator+=(const FourierPQForm& o) {
    check_compatible(o);
    absorb_power(o);
    for (const auto& [k, c] : o.terms_)
        add(k, c);
    return *this;
}

FourierPQForm& FourierPQForm::operator-=(const FourierPQForm& o) {
    check_compatible(o);
    absorb_power(o);
    for (const auto& [k, c] : o.terms_)
        add(k, -c);
    return *this;
}

FourierPQForm FourierPQForm::scaled(const ExactComplex& c) const {
    FourierPQForm out(n_, m_, p_, q_, power_);
    for (const auto& [k, x] : terms_)
        out.add(k, x * c);
    return out;
}

bool operator==(const FourierPQForm& a, const FourierPQForm& b) {
    if (a.n_ != b.n_ || a.m_ != b.m_ || a.p_ != b.p_ || a.q_ != b.q_)
        return false;
    if (a.terms_.empty() && b.terms_.empty())
        return true;
    if (a.power_ != b.power_ || a.terms_.size() != b.terms_.size())
        return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
        if (i->first < j->first || j->first < i->first || i->second != j->second)
            return false;
    return true;
}

FourierPQForm dbar(const FourierPQForm& f, const PeriodMatrix& P) {
    FourierPQForm out(f.n(), f.m(), f.p(), f.q() + 1, f.power() + 1);
    if (f.q() < 0)
        return out;
    std::map<CharIndex, AVector> cache;
    for (const auto& [k, c] : f.terms()) {
        if (k.c.is_zero())
            continue;
        auto it = cache.find(k.c);
        if (it == cache.end())
            it = cache.emplace(k.c, a_vector(P, k.c)).first;
        const AVector& a = it->second;
        for (int j = 0; j < f.m(); ++j) {
            if (std::find(k.J.begin(), k.J.end(), j) != k.J.end() || a[j].is_zero())
                continue;
            FourierPQForm::Key nk{k.c, k.I, k.J};
            nk.J.insert(std::upper_bound(nk.J.begin(), nk.J.end(), j), j);
            out.add(nk, c * a[j] * ExactComplex(insertion_sign(f.p(), k.J, j)));
        }
    }
    return out;
}

FourierPQForm contraction(const FourierPQForm& f, const PeriodMatrix& P, Contraction kind) {
    FourierPQForm out(f.n(), f.m(), f.p(), f.q() - 1, f.power() - 1);
    if (f.q() <= 0)
        return out;
    std::map<CharIndex, AVector> cache;
    for (const auto& [k, c] : f.terms()) {
        if (k.c.is_zero())
            continue;
        auto it = cache.find(k.c);
        if (it == cache.end()) {
            AVector a = a_vector(P, k.c);
            ExactReal n2 = 0;
            for (const auto& x : a)
                n2 += x.norm2();
            if (n2.is_zero())
                throw PreconditionError("a vanishes at a nonzero character; the lattice is not Cousin");
            ExactComplex inv(n2.inverse());
            for (auto& x : a)
                x = (kind == Contraction::hermitian ? x.conj() : x) * inv;
            it = cache.emplace(k.c, std::move(a)).first;
        }
        const AVector& w = it->second;
        for (std::size_t r = 0; r < k.J.size(); ++r) {
            FourierPQForm::Key nk{k.c, k.I, k.J};
            nk.J.erase(nk.J.begin() + static_cast<long>(r));
            int sign = ((f.p() + static_cast<int>(r)) % 2 == 0) ? 1 : -1;
            out.add(nk, c * w[k.J[r]] * ExactComplex(sign));
        }
    }
    return out;
}

FourierPQForm homotopy_eta(const FourierPQForm& f, const PeriodMatrix& P, Contraction kind) {
    if (f.q() < 1)
        throw PreconditionError("homotopy needs a form of anti-holomorphic degree >= 1");
    if (!dbar(f, P).is_zero())
        throw PreconditionError("homotopy needs a dbar-closed form");
    for (const auto& [k, c] : f.terms()) {
        if (k.c.is_zero())
            continue;
        auto a = a_vector(P, k.c);
        if (std::all_of(a.begin(), a.end(), [](const ExactComplex& x) { return x.is_zero(); })) {
            std::string w;
            for (const auto* v : {&k.c.pi, &k.c.rho, &k.c.sigma})
                for (const auto& z : *v)
                    w += (w.empty() ? "" : ",") + z.get_str();
            throw PreconditionError("a vanishes at the nonzero character (" + w + "); the lattice is not Cousin");
        }
    }
    return contraction(f, P, kind);
}

FourierPQForm harmonic_part(const FourierPQForm& f) {
    FourierPQForm out(f.n(), f.m(), f.p(), f.q(), f.power());
    for (const auto& [k, c] : f.terms())
        if (k.c.is_zero())
            out.add(k, c);
    return out;
}

std::vector<CharIndex> characters_in_box(int n, int m, long box) {
    if (box < 0)
        throw SchemaError("box must be >= 0");
    int coords = n + m;
    std::vector<long> c(coords, -box);
    std::vector<CharIndex> out;
    for (;;) {
        CharIndex idx;
        for (int i = 0; i < coords; ++i)
            (i < m ? idx.pi : i < 2 * m ? idx.rho : idx.sigma).push_back(Integer(c[i]));
        out.push_back(std::move(idx));
        int i = coords - 1;
        while (i >= 0 && c[i] == box)
            c[i--] = -box;
        if (i < 0)
            break;
        ++c[i];
    }
    return out;
}

long cohomology_dims(const PeriodMatrix& P, int p, int q, long box) {
    int n = P.n, m = P.m;
    if (p < 0 || p > n || q < 0)
        throw SchemaError("degree out of range");
    if (!is_cousin(P).cousin)
        throw PreconditionError("cohomology_dims needs a Cousin lattice");
    if (q > m)
        return 0;
    auto Is = subsets(n, p);
    auto basis = [&](int qq) {
        std::vector<std::pair<std::vector<int>, std::vector<int>>> b;
        for (const auto& I : Is)
            for (const auto& J : subsets(m, qq))
                b.emplace_back(I, J);
        return b;
    };
    auto Bprev = basis(q - 1), Bq = basis(q), Bnext = basis(q + 1);
    // matrix of dbar from degree qq to qq + 1 on one character
    auto block = [&](const CharIndex& c, const decltype(Bq)& from, const decltype(Bq)& to, int qq) {
        Mat<ExactComplex> A = zeros<ExactComplex>(to.size(), from.size());
        for (std::size_t col = 0; col < from.size(); ++col) {
            FourierPQForm f(n, m, p, qq);
            f.add({c, from[col].first, from[col].second}, ExactComplex(1));
            auto g = dbar(f, P);
            for (const auto& [k, x] : g.terms()) {
                auto row = std::find(to.begin(), to.end(), std::make_pair(k.I, k.J)) - to.begin();
                A[row][col] = x;
            }
        }
        return A;
    };
    auto chars = characters_in_box(n, m, box);
    std::vector<long> dims(chars.size(), 0);
    parallel_for(chars.size(), [&](std::size_t i) {
        const CharIndex& c = chars[i];
        long d = static_cast<long>(Bq.size());
        if (!c.is_zero()) {
            if (!Bnext.empty())
                d -= static_cast<long>(rank_of(block(c, Bq, Bnext, q)));
            if (!Bprev.empty())
                d -= static_cast<long>(rank_of(block(c, Bprev, Bq, q - 1)));
        }
        dims[i] = d;
    });
    long total = 0;
    for (long d : dims)
        total += d;
    return total;
}

BoundConstants bound_constants(const PeriodMatrix& P, const std::vector<std::pair<Rational, Rational>>& C_of_a) {
    BoundConstants bc;
    RealMat Ninv = n_inverse(P);
    bc.k1 = sqrt_upper(frobenius2(matmul(P.M, Ninv)));
    bc.k2 = 1 / sqrt_upper(frobenius2(P.N));
    bc.k = bc.k2 / (1 + bc.k1 + bc.k2);
    // pi != 0 gives ||a|| >= ||pi|| / 2 >= 1/2; pi = 0 gives ||rho N^{-1}|| / 2 >= k2 / 2
    bc.kappa0 = std::min(Rational(1), bc.k2) / 2;
    for (const auto& [a, C] : C_of_a) {
        if (!(a > 0 && a < 1) || !(C > 0))
            throw PreconditionError("C(a) must be positive with a in (0, 1)");
        bc.C1.emplace_back(a, bc.k * C / 2);
    }
    return bc;
}

BoundVerification verify_bound(const PeriodMatrix& P, const BoundConstants& bc, const Rational& a, long box) {
    auto it = std::find_if(bc.C1.begin(), bc.C1.end(), [&](const auto& e) { return e.first == a; });
    if (it == bc.C1.end())
        throw PreconditionError("no C1 recorded for this a");
    BoundVerification res;
    res.a = a;
    res.C1 = it->second;
    res.box = box;
    int n = P.n, m = P.m, r = n - m;
    const long prec = 160;

    RealMat Ninv = n_inverse(P);
    RealMat MNinv = matmul(P.M, Ninv);
    RealMat X = matmul(P.R1, P.M);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j)
            X[i][j] -= P.R2[i][j];
    RealMat S = matmul(X, Ninv);
    auto enclose = [&](const RealMat& A) {
        std::vector<std::vector<Interval>> E;
        for (const auto& row : A) {
            std::vector<Interval> e;
            for (const auto& x : row)
                e.push_back(x.interval(prec));
            E.push_back(std::move(e));
        }
        return E;
    };
    auto eNinv = enclose(Ninv), eMN = enclose(MNinv), eS = enclose(S), eR1 = enclose(P.R1);

    // (C1 a^k)^2 for k = 0 .. r * box, exact
    std::vector<Rational> rhs2;
    Rational t = res.C1;
    for (long k = 0; k <= r * box; ++k) {
        rhs2.push_back(t * t);
        t *= a;
    }
    std::vector<Interval> rhs2_enc;
    for (const auto& q : rhs2)
        rhs2_enc.emplace_back(q, prec);
    Rational kappa2 = bc.kappa0 * bc.kappa0;
    Interval kappa2_enc(kappa2, prec);

    auto norm2_enclosure = [&](const std::vector<long>& c) {
        Interval n2(Rational(0), prec);
        for (int j = 0; j < m; ++j) {
            Interval u(c[j], prec), v(Rational(0), prec);
            for (int i = 0; i < r; ++i)
                if (c[2 * m + i] != 0) {
                    Interval si(c[2 * m + i], prec);
                    u -= si * eR1[i][j];
                    v += si * eS[i][j];
                }
            for (int l = 0; l < m; ++l) {
                if (c[m + l] != 0)
                    v += Interval(c[m + l], prec) * eNinv[l][j];
                if (c[l] != 0)
                    v -= Interval(c[l], prec) * eMN[l][j];
            }
            n2 += sqr(u) + sqr(v);
        }
        return n2 * Interval(Rational(1, 4), prec);
    };
    auto to_index = [&](const std::vector<long>& c) {
        CharIndex idx;
        for (int i = 0; i < n + m; ++i)
            (i < m ? idx.pi : i < 2 * m ? idx.rho : idx.sigma).push_back(Integer(c[i]));
        return idx;
    };
    auto exact_norm2 = [&](const std::vector<long>& c) {
        ExactReal s = 0;
        for (const auto& x : a_vector(P, to_index(c)))
            s += x.norm2();
        return s;
    };
    // certified n2 >= bound: cheap enclosure first, exact comparison when it is inconclusive
    auto at_least = [&](const std::vector<long>& c, const Interval& n2, const Rational& bound, const Interval& benc) {
        if (benc.hi_rational() < n2.lo_rational())
            return true;
        if (n2.hi_rational() < benc.lo_rational())
            return false;
        return !(exact_norm2(c) < ExactReal(bound));
    };

    bool first = true;
    std::vector<long> c(n + m, -box);
    for (;;) {
        bool zero = std::all_of(c.begin(), c.end(), [](long x) { return x == 0; });
        if (!zero) {
            long norm = 0;
            for (int i = 0; i < r; ++i)
                norm += std::labs(c[2 * m + i]);
            Interval n2 = norm2_enclosure(c);
            ++res.checked;
            if (!at_least(c, n2, rhs2[norm], rhs2_enc[norm]))
                res.violations.push_back(to_index(c));
            double margin = std::sqrt(n2.mid_double() / rhs2_enc[norm].mid_double());
            if (first || margin < res.min_margin) {
                res.min_margin = margin;
                res.argmin = to_index(c);
                first = false;
            }
            if (norm == 0 && !at_least(c, n2, kappa2, kappa2_enc))
                res.kappa0_ok = false;
        }
        int i = n + m - 1;
        while (i >= 0 && c[i] == box)
            c[i--] = -box;
        if (i < 0)
            break;
        ++c[i];
    }

    // box minimum of ||a_{pi,rho,0}|| over |pi|, |rho| <= 2
    bool have = false;
    for (const auto& idx : characters_in_box(n, m, 2)) {
        if (idx.is_zero() || !std::all_of(idx.sigma.begin(), idx.sigma.end(), [](const Integer& z) { return z == 0; }))
            continue;
        std::vector<long> cc;
        for (const auto* v : {&idx.pi, &idx.rho, &idx.sigma})
            for (const auto& z : *v)
                cc.push_back(z.get_si());
        double val = std::sqrt(norm2_enclosure(cc).lo_double());
        if (!have || val < res.kappa_box) {
            res.kappa_box = val;
            have = true;
        }
    }
    return res;
}

} // namespace cousinlab
