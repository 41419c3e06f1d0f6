#include "cousinlab/period_lattice.hpp"

#include "cousinlab/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cousinlab {

namespace {

void check_shape(const RealMat& a, int rows, int cols, const char* name) {
    bool ok = static_cast<int>(a.size()) == rows;
    for (const auto& r : a)
        ok = ok && static_cast<int>(r.size()) == cols;
    if (!ok)
        throw SchemaError(std::string("period matrix block ") + name + " has the wrong shape");
}

Integer l1(const std::vector<Integer>& v, std::size_t len) {
    Integer s = 0;
    for (std::size_t i = 0; i < len; ++i)
        s += abs(v[i]);
    return s;
}

// Coordinate k of x in the power basis of its field (rationals live in k = 0).
Rational coord(const ExactReal& x, int k) {
    if (x.is_rational())
        return k == 0 ? x.rational() : Rational(0);
    return x.element().coords()[k];
}

bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j)
                c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) {
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    return c;
}

bool is_real(const ExactComplex& z) { return z.im.is_zero(); }

IntMat permutation(const std::vector<int>& order) {
    std::size_t k = order.size();
    IntMat U(k, std::vector<Integer>(k, 0));
    for (std::size_t pos = 0; pos < k; ++pos)
        U[order[pos]][pos] = 1;
    return U;
}

std::optional<Normalization> fast_path(const ComplexMat& B, int n, int m) {
    int cols = n + m;
    std::vector<bool> used(cols, false);
    std::vector<int> order;
    auto top_is = [&](int c, int j) {
        for (int r = 0; r < m; ++r)
            if (B[r][c] != ExactComplex(r == j ? 1 : 0))
                return false;
        return true;
    };
    auto bottom_real = [&](int c) {
        for (int r = m; r < n; ++r)
            if (!is_real(B[r][c]))
                return false;
        return true;
    };
    for (int i = 0; i < n - m; ++i) {
        int found = -1;
        for (int c = 0; c < cols && found < 0; ++c) {
            if (used[c] || !top_is(c, -1))
                continue;
            bool ok = true;
            for (int r = m; r < n; ++r)
                ok = ok && B[r][c] == ExactComplex(r - m == i ? 1 : 0);
            if (ok)
                found = c;
        }
        if (found < 0)
            return std::nullopt;
        used[found] = true;
        order.push_back(found);
    }
    for (int j = 0; j < m; ++j) {
        int found = -1;
        for (int c = 0; c < cols && found < 0; ++c)
            if (!used[c] && top_is(c, j) && bottom_real(c))
                found = c;
        if (found < 0)
            return std::nullopt;
        used[found] = true;
        order.push_back(found);
    }
    for (int c = 0; c < cols; ++c)
        if (!used[c]) {
            if (!bottom_real(c))
                return std::nullopt;
            order.push_back(c);
        }
    RealMat M = zeros<ExactReal>(m, m), N = zeros<ExactReal>(m, m);
    RealMat R1 = zeros<ExactReal>(n - m, m), R2 = zeros<ExactReal>(n - m, m);
    for (int j = 0; j < m; ++j) {
        int e = order[n - m + j], f = order[n + j];
        for (int r = 0; r < m; ++r) {
            M[r][j] = B[r][f].re;
            N[r][j] = B[r][f].im;
        }
        for (int r = m; r < n; ++r) {
            R1[r - m][j] = B[r][e].re;
            R2[r - m][j] = B[r][f].re;
        }
    }
    if (!inverse(N))
        return std::nullopt;
    Normalization out;
    out.P = PeriodMatrix(n, m, M, N, R1, R2);
    out.coord_change = identity<ExactComplex>(n);
    out.column_transform = permutation(order);
    out.fast_path = true;
    return out;
}

} // namespace

PeriodMatrix::PeriodMatrix(int n_, int m_, RealMat M_, RealMat N_, RealMat R1_, RealMat R2_)
    : n(n_), m(m_), M(std::move(M_)), N(std::move(N_)), R1(std::move(R1_)), R2(std::move(R2_)) {
    if (m < 1 || m > n)
        throw SchemaError("period matrix needs 1 <= m <= n");
    check_shape(M, m, m, "M");
    check_shape(N, m, m, "N");
    check_shape(R1, n - m, m, "R1");
    check_shape(R2, n - m, m, "R2");
    field(); // rejects incommensurable entries
    if (!inverse(N))
        throw PreconditionError("period matrix: N is singular");
}

RealMat PeriodMatrix::R() const {
    RealMat r(n - m);
    for (int i = 0; i < n - m; ++i) {
        r[i] = R1[i];
        r[i].insert(r[i].end(), R2[i].begin(), R2[i].end());
    }
    return r;
}

ComplexMat PeriodMatrix::columns() const {
    ComplexMat c = zeros<ExactComplex>(n, n + m);
    for (int i = 0; i < n - m; ++i)
        c[m + i][i] = 1;
    for (int j = 0; j < m; ++j) {
        c[j][n - m + j] = 1;
        for (int r = 0; r < m; ++r)
            c[r][n + j] = ExactComplex(M[r][j], N[r][j]);
        for (int i = 0; i < n - m; ++i) {
            c[m + i][n - m + j] = R1[i][j];
            c[m + i][n + j] = R2[i][j];
        }
    }
    return c;
}

FieldPtr PeriodMatrix::field() const {
    FieldPtr K;
    int emb = 0;
    for (const RealMat* blk : {&M, &N, &R1, &R2})
        for (const auto& row : *blk)
            for (const auto& x : row) {
                if (x.is_rational())
                    continue;
                if (!K) {
                    K = x.field();
                    emb = x.embedding();
                } else if (!same_field(K, x.field()) || emb != x.embedding()) {
                    throw PreconditionError("period matrix mixes incommensurable algebraic entries");
                }
            }
    return K;
}

bool operator==(const PeriodMatrix& a, const PeriodMatrix& b) {
    return a.n == b.n && a.m == b.m && a.M == b.M && a.N == b.N && a.R1 == b.R1 && a.R2 == b.R2;
}

Normalization normalize(const ComplexMat& B, int m) {
    int n = static_cast<int>(B.size());
    if (n < 1 || m < 1 || m > n)
        throw SchemaError("normalize: need 1 <= m <= n");
    int cols = n + m;
    for (const auto& row : B)
        if (static_cast<int>(row.size()) != cols)
            throw SchemaError("normalize: basis must be n x (n+m)");

    // real rank of the 2n x (n+m) stack [Re; Im]
    RealMat stack = zeros<ExactReal>(2 * n, cols);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < cols; ++c) {
            stack[r][c] = B[r][c].re;
            stack[n + r][c] = B[r][c].im;
        }
    if (static_cast<int>(rank_of(stack)) != cols)
        throw PreconditionError("normalize: columns are not R-linearly independent");

    if (auto fp = fast_path(B, n, m))
        return *fp;

    std::vector<int> S = first_combination(n - m);
    do {
        std::vector<int> rest;
        for (int c = 0; c < cols; ++c)
            if (!std::binary_search(S.begin(), S.end(), c))
                rest.push_back(c);
        std::vector<int> Ei = first_combination(m);
        do {
            std::vector<int> E, F;
            for (int k = 0; k < static_cast<int>(rest.size()); ++k)
                (std::binary_search(Ei.begin(), Ei.end(), k) ? E : F).push_back(rest[k]);
            ComplexMat ES = zeros<ExactComplex>(n, n);
            for (int r = 0; r < n; ++r) {
                for (int j = 0; j < m; ++j)
                    ES[r][j] = B[r][E[j]];
                for (int i = 0; i < n - m; ++i)
                    ES[r][m + i] = B[r][S[i]];
            }
            auto A0 = inverse(ES);
            if (!A0)
                continue;
            ComplexMat Fm = zeros<ExactComplex>(n, m);
            for (int r = 0; r < n; ++r)
                for (int j = 0; j < m; ++j)
                    Fm[r][j] = B[r][F[j]];
            ComplexMat img = matmul(*A0, Fm);
            RealMat M = zeros<ExactReal>(m, m), N = zeros<ExactReal>(m, m);
            for (int r = 0; r < m; ++r)
                for (int j = 0; j < m; ++j) {
                    M[r][j] = img[r][j].re;
                    N[r][j] = img[r][j].im;
                }
            auto Ninv = inverse(N);
            if (!Ninv)
                continue;
            RealMat imc2 = zeros<ExactReal>(n - m, m);
            for (int i = 0; i < n - m; ++i)
                for (int j = 0; j < m; ++j)
                    imc2[i][j] = img[m + i][j].im;
            RealMat K = matmul(imc2, *Ninv);
            for (auto& row : K)
                for (auto& x : row)
                    x = -x;
            // coordinate change [[I, 0], [K, I]] * A0
            ComplexMat L = identity<ExactComplex>(n);
            for (int i = 0; i < n - m; ++i)
                for (int j = 0; j < m; ++j)
                    L[m + i][j] = K[i][j];
            ComplexMat A = matmul(L, *A0);
            RealMat R2 = zeros<ExactReal>(n - m, m);
            ComplexMat fimg = matmul(A, Fm);
            for (int i = 0; i < n - m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (!is_real(fimg[m + i][j]))
                        throw std::logic_error("normalize: R2 block not real");
                    R2[i][j] = fimg[m + i][j].re;
                }
            std::vector<int> order = S;
            order.insert(order.end(), E.begin(), E.end());
            order.insert(order.end(), F.begin(), F.end());
            Normalization out;
            out.P = PeriodMatrix(n, m, M, N, K, R2);
            out.coord_change = std::move(A);
            out.column_transform = permutation(order);
            return out;
        } while (next_combination(Ei, n));
    } while (next_combination(S, cols));
    throw PreconditionError("normalize: no column choice gives an invertible N block");
}

std::vector<ExactReal> sigma_times(const std::vector<Integer>& sigma, const RealMat& R) {
    std::size_t cols = R.empty() ? 0 : R[0].size();
    std::vector<ExactReal> out(cols, ExactReal(0));
    for (std::size_t i = 0; i < R.size(); ++i) {
        if (sigma[i] == 0)
            continue;
        ExactReal s(Rational(sigma[i]));
        for (std::size_t j = 0; j < cols; ++j)
            out[j] += s * R[i][j];
    }
    return out;
}

bool witness_holds(const PeriodMatrix& P, const std::vector<Integer>& sigma, const std::vector<Integer>& tau) {
    if (static_cast<int>(sigma.size()) != P.n - P.m || static_cast<int>(tau.size()) != 2 * P.m)
        return false;
    if (std::all_of(sigma.begin(), sigma.end(), [](const Integer& z) { return z == 0; }))
        return false;
    auto v = sigma_times(sigma, P.R());
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] + ExactReal(Rational(tau[j])) != ExactReal(0))
            return false;
    return true;
}

CousinCertificate is_cousin(const PeriodMatrix& P) {
    RealMat R = P.R();
    FieldPtr K = P.field();
    int d = K ? K->degree() : 1;
    int r = P.n - P.m, c = 2 * P.m;
    std::size_t unknowns = r + c;

    // sum_i sigma_i R_ij + tau_j = 0, one integer row per (column j, coordinate k)
    IntMat sys;
    for (int j = 0; j < c; ++j)
        for (int k = 0; k < d; ++k) {
            std::vector<Rational> row(unknowns, Rational(0));
            for (int i = 0; i < r; ++i)
                row[i] = coord(R[i][j], k);
            if (k == 0)
                row[r + j] = 1;
            Integer den = 1;
            for (auto& q : row)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
            std::vector<Integer> irow(unknowns);
            bool nonzero = false;
            for (std::size_t u = 0; u < unknowns; ++u) {
                Rational v = row[u] * den;
                irow[u] = v.get_num();
                nonzero = nonzero || irow[u] != 0;
            }
            if (nonzero)
                sys.push_back(std::move(irow));
        }
    auto ker = integer_kernel(sys, unknowns);

    CousinCertificate cert;
    if (ker.empty())
        return cert;
    cert.cousin = false;

    // pairwise size reduction on the sigma part, then take the l1-shortest
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t a = 0; a < ker.size(); ++a)
            for (std::size_t b = 0; b < ker.size(); ++b) {
                if (a == b)
                    continue;
                for (int sgn : {1, -1}) {
                    std::vector<Integer> t(unknowns);
                    for (std::size_t u = 0; u < unknowns; ++u)
                        t[u] = ker[a][u] + sgn * ker[b][u];
                    if (l1(t, r) < l1(ker[a], r)) {
                        ker[a] = std::move(t);
                        improved = true;
                    }
                }
            }
    }
    for (const auto& v : ker)
        cert.violation_basis.emplace_back(v.begin(), v.begin() + r);
    std::size_t best = 0;
    for (std::size_t a = 1; a < ker.size(); ++a)
        if (l1(ker[a], r) < l1(ker[best], r))
            best = a;
    std::vector<Integer> w = ker[best];
    auto lead = std::find_if(w.begin(), w.begin() + r, [](const Integer& z) { return z != 0; });
    if (lead == w.begin() + r)
        throw std::logic_error("is_cousin: kernel vector with zero sigma part");
    if (*lead < 0)
        for (auto& z : w)
            z = -z;
    cert.sigma.assign(w.begin(), w.begin() + r);
    cert.tau.assign(w.begin() + r, w.end());
    if (!witness_holds(P, cert.sigma, cert.tau))
        throw std::logic_error("is_cousin: witness failed exact verification");
    return cert;
}

PeriodMatrix example_matrix(const ExactReal& alpha) {
    return PeriodMatrix(2, 1, {{ExactReal(0)}}, {{ExactReal(1)}}, {{alpha}}, {{ExactReal(0)}});
}

} // namespace cousinlab
