#include <doctest.h>

#include "cousinlab/errors.hpp"
#include "cousinlab/period_lattice.hpp"

#include <random>

using namespace cousinlab;

namespace {

ExactReal sqrt2() { return ExactReal::from_algebraic(AlgebraicReal(Poly::from_integers({-2, 0, 1}), 1, 2)); }
ExactReal plastic_root() {
    return ExactReal::from_algebraic(AlgebraicReal(Poly::from_integers({-1, -1, 0, 1}), 1, 2));
}

Integer det_int(IntMat a) {
    // fraction-free enough for the tiny sizes used here
    Mat<Rational> q = zeros<Rational>(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            q[i][j] = Rational(a[i][j]);
    Rational det = 1;
    std::size_t n = q.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && q[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(q[p], q[c]);
            det = -det;
        }
        det *= q[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = q[i][c] / q[c][c];
            for (std::size_t j = c; j < n; ++j)
                q[i][j] -= f * q[c][j];
        }
    }
    return det.get_num();
}

ComplexMat to_complex(const IntMat& u) {
    ComplexMat c = zeros<ExactComplex>(u.size(), u[0].size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u[i].size(); ++j)
            c[i][j] = ExactComplex(Rational(u[i][j]));
    return c;
}

void check_equivalence(const ComplexMat& B, const Normalization& nz) {
    CHECK(abs(det_int(nz.column_transform)) == 1);
    ComplexMat lhs = matmul(matmul(nz.coord_change, B), to_complex(nz.column_transform));
    CHECK(lhs == nz.P.columns());
    CHECK(inverse(nz.coord_change).has_value());
}

// sigma R in Z^{2m}, by exact rational arithmetic
bool brute_violation(const Mat<Rational>& R, const std::vector<long>& s) {
    for (std::size_t j = 0; j < R[0].size(); ++j) {
        Rational v = 0;
        for (std::size_t i = 0; i < R.size(); ++i)
            v += s[i] * R[i][j];
        if (v.get_den() != 1)
            return false;
    }
    return true;
}

// membership of s in the integer span of a (full rank) basis
bool in_span(const std::vector<std::vector<Integer>>& basis, const std::vector<long>& s) {
    std::size_t k = basis.size(), r = s.size();
    Mat<Rational> a = zeros<Rational>(r, k + 1);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            a[i][j] = Rational(basis[j][i]);
        a[i][k] = s[i];
    }
    auto piv = echelon(a);
    if (!piv.empty() && piv.back() == k)
        return false;
    for (std::size_t row = 0; row < piv.size(); ++row)
        if (a[row][k].get_den() != 1)
            return false;
    return true;
}

} // namespace

TEST_CASE("normal form of the example lattice") {
    PeriodMatrix P = example_matrix(ExactReal(Rational(1, 2)));
    auto nz = normalize(P.columns(), 1);
    CHECK(nz.fast_path);
    CHECK(nz.P == P);
    CHECK(nz.P.M[0][0] == ExactReal(0));
    CHECK(nz.P.N[0][0] == ExactReal(1));
    CHECK(nz.P.R1[0][0] == ExactReal(Rational(1, 2)));
    CHECK(nz.P.R2[0][0] == ExactReal(0));
    check_equivalence(P.columns(), nz);
}

TEST_CASE("one dimensional torus") {
    ComplexMat B = {{ExactComplex(1), ExactComplex::i()}};
    auto nz = normalize(B, 1);
    CHECK(nz.P.n == 1);
    CHECK(nz.P.M[0][0] == ExactReal(0));
    CHECK(nz.P.N[0][0] == ExactReal(1));
    CHECK(nz.P.R1.empty());
    check_equivalence(B, nz);
}

TEST_CASE("column permutations give the same blocks") {
    PeriodMatrix P = example_matrix(ExactReal(Rational(1, 2)));
    ComplexMat C = P.columns();
    std::vector<std::vector<int>> perms = {{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
        ComplexMat B = zeros<ExactComplex>(2, 3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c)
                B[r][c] = C[r][p[c]];
        auto nz = normalize(B, 1);
        CHECK(nz.P == P);
        check_equivalence(B, nz);
    }
}

TEST_CASE("general path recovers an equivalent normal form") {
    PeriodMatrix P(2, 1, {{ExactReal(Rational(1, 2))}}, {{ExactReal(2)}}, {{ExactReal(Rational(1, 3))}},
                   {{ExactReal(Rational(1, 5))}});
    ComplexMat A = {{ExactComplex(1), ExactComplex(2)}, {ExactComplex(Rational(1, 2)), ExactComplex(1, 1)}};
    IntMat U = {{1, 1, 0}, {0, 1, 0}, {2, 0, 1}};
    ComplexMat B = matmul(matmul(A, P.columns()), to_complex(U));
    auto nz = normalize(B, 1);
    CHECK_FALSE(nz.fast_path);
    check_equivalence(B, nz);
    // idempotent on its own output
    auto again = normalize(nz.P.columns(), 1);
    CHECK(again.P == nz.P);
    CHECK(again.fast_path);
    // Cousin status is a lattice invariant
    CHECK(is_cousin(nz.P).cousin == is_cousin(P).cousin);

    // same for algebraic entries
    PeriodMatrix Q = example_matrix(sqrt2());
    ComplexMat BQ = matmul(matmul(A, Q.columns()), to_complex(U));
    auto nq = normalize(BQ, 1);
    check_equivalence(BQ, nq);
    CHECK(is_cousin(nq.P).cousin);
}

TEST_CASE("rank deficient bases are rejected") {
    ComplexMat B = {{ExactComplex(0), ExactComplex(1), ExactComplex(2)}, {ExactComplex(1), ExactComplex(0), ExactComplex(0)}};
    CHECK_THROWS_AS(normalize(B, 1), PreconditionError);
    CHECK_THROWS_AS((PeriodMatrix(2, 1, {{ExactReal(0)}}, {{ExactReal(0)}}, {{ExactReal(1)}}, {{ExactReal(0)}})),
                    PreconditionError);
}

TEST_CASE("Cousin criterion examples") {
    auto half = is_cousin(example_matrix(ExactReal(Rational(1, 2))));
    CHECK_FALSE(half.cousin);
    CHECK(half.sigma == std::vector<Integer>{2});
    CHECK(half.tau == std::vector<Integer>{-1, 0});

    auto third = is_cousin(example_matrix(ExactReal(Rational(1, 3))));
    CHECK_FALSE(third.cousin);
    CHECK(third.sigma == std::vector<Integer>{3});
    CHECK(third.tau == std::vector<Integer>{-1, 0});

    auto zero = is_cousin(example_matrix(ExactReal(0)));
    CHECK_FALSE(zero.cousin);
    CHECK(zero.sigma == std::vector<Integer>{1});
    CHECK(zero.tau == std::vector<Integer>{0, 0});

    CHECK(is_cousin(example_matrix(sqrt2())).cousin);
    CHECK(is_cousin(example_matrix(plastic_root())).cousin);
    CHECK(is_cousin(example_matrix(plastic_root() * plastic_root() - plastic_root())).cousin);
}

TEST_CASE("enumeration oracle for small witnesses") {
    for (int q = 1; q <= 7; ++q)
        for (int p = 0; p < q; ++p) {
            Rational alpha = ratio(p, q);
            auto c = is_cousin(example_matrix(ExactReal(alpha)));
            REQUIRE_FALSE(c.cousin);
            // smallest sigma in 1..10 with sigma*alpha integral
            int best = 0;
            for (int s = 1; s <= 10 && best == 0; ++s)
                if (Rational(s * alpha).get_den() == 1)
                    best = s;
            CHECK(c.sigma[0] == best);
        }
}

TEST_CASE("mixed rational and algebraic rows") {
    ExactReal r2 = sqrt2();
    PeriodMatrix P(3, 1, {{ExactReal(0)}}, {{ExactReal(1)}}, {{r2}, {ExactReal(Rational(1, 2))}},
                   {{ExactReal(0)}, {ExactReal(0)}});
    auto c = is_cousin(P);
    CHECK_FALSE(c.cousin);
    CHECK(c.sigma == std::vector<Integer>{0, 2});
    CHECK(witness_holds(P, c.sigma, c.tau));

    PeriodMatrix Q(3, 1, {{ExactReal(0)}}, {{ExactReal(1)}}, {{r2}, {r2 + ExactReal(1)}}, {{ExactReal(0)}, {ExactReal(0)}});
    auto d = is_cousin(Q);
    CHECK_FALSE(d.cousin);
    CHECK(d.sigma == std::vector<Integer>{1, -1});
    CHECK(d.tau == std::vector<Integer>{1, 0});

    ExactReal r3 = ExactReal::from_algebraic(AlgebraicReal(Poly::from_integers({-3, 0, 1}), 1, 2));
    CHECK_THROWS_AS((PeriodMatrix(3, 1, {{ExactReal(0)}}, {{ExactReal(1)}}, {{r2}, {r3}}, {{ExactReal(0)}, {ExactReal(0)}})),
                    PreconditionError);
}

TEST_CASE("is_cousin agrees with box enumeration on random rational R") {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        Mat<Rational> Rq = zeros<Rational>(2, 2);
        RealMat R1(2), R2(2);
        for (int i = 0; i < 2; ++i) {
            Rq[i][0] = ratio(num(rng), den(rng));
            Rq[i][1] = ratio(num(rng), den(rng));
            R1[i] = {ExactReal(Rq[i][0])};
            R2[i] = {ExactReal(Rq[i][1])};
        }
        PeriodMatrix P(3, 1, {{ExactReal(0)}}, {{ExactReal(1)}}, R1, R2);
        auto c = is_cousin(P);
        REQUIRE_FALSE(c.cousin); // rational R is never Cousin
        CHECK(witness_holds(P, c.sigma, c.tau));
        for (long a = -25; a <= 25; ++a)
            for (long b = -25; b <= 25; ++b) {
                std::vector<long> s = {a, b};
                bool brute = brute_violation(Rq, s);
                bool lat = in_span(c.violation_basis, s);
                if (brute != lat) {
                    FAIL_CHECK("mismatch at trial " << trial << " R " << Rq[0][0] << "," << Rq[0][1] << ";" << Rq[1][0] << "," << Rq[1][1] << " s " << a << "," << b << " brute " << brute << " nb " << c.violation_basis.size() << " b0 " << c.violation_basis[0][0] << "," << c.violation_basis[0][1]);
                    a = b = 26;
                }
            }
    }
}
