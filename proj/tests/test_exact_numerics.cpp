#include <doctest.h>

#include "cousinlab/algebraic.hpp"
#include "cousinlab/errors.hpp"
#include "cousinlab/linalg.hpp"
#include "cousinlab/polynomial.hpp"
#include "cousinlab/roots.hpp"

#include <random>

using namespace cousinlab;

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 5000);
    return ratio(num(rng), den(rng));
}

// Independent resultant: determinant of the Sylvester matrix.
Rational sylvester_resultant(const Poly& a, const Poly& b) {
    int m = a.degree(), n = b.degree();
    int size = m + n;
    Mat<Rational> s = zeros<Rational>(size, size);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            s[r][r + k] = a.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s[n + r][r + k] = b.coeff(n - k);
    Rational det = 1;
    for (int c = 0; c < size; ++c) {
        int p = c;
        while (p < size && s[p][c] == 0)
            ++p;
        if (p == size)
            return 0;
        if (p != c) {
            std::swap(s[p], s[c]);
            det = -det;
        }
        det *= s[c][c];
        for (int i = c + 1; i < size; ++i) {
            Rational f = s[i][c] / s[c][c];
            for (int j = c; j < size; ++j)
                s[i][j] -= f * s[c][j];
        }
    }
    return det;
}

} // namespace

TEST_CASE("rational parsing is exact and rejects floats") {
    CHECK(parse_rational("3/7") == Rational(3, 7));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(parse_rational("12") == 12);
    CHECK_THROWS_AS(parse_rational("0.5"), SchemaError);
    CHECK_THROWS_AS(parse_rational("1e3"), SchemaError);
    CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
    CHECK_THROWS_AS(parse_rational("1/-2"), SchemaError);
    CHECK(round_half_even(Rational(5, 2)) == 2);
    CHECK(round_half_even(Rational(7, 2)) == 4);
    CHECK(round_half_even(Rational(-1, 2)) == 0);
}

TEST_CASE("interval arithmetic contains exact rational results") {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 300; ++trial) {
        Rational a = random_rational(rng), b = random_rational(rng);
        if (b == 0)
            b = 1;
        for (long prec : {24L, 53L, 128L, 256L, 700L}) {
            Interval ia(a, prec), ib(b, prec);
            CHECK((ia + ib).contains(a + b));
            CHECK((ia - ib).contains(a - b));
            CHECK((ia * ib).contains(a * b));
            CHECK((ia / ib).contains(a / b));
            CHECK(sqr(ia - ib).contains((a - b) * (a - b)));
            CHECK(pow(ia, 3).contains(a * a * a));
        }
    }
}

TEST_CASE("transcendental interval functions enclose known values") {
    Interval pi = Interval::pi(200);
    CHECK_FALSE(pi.contains(Rational("314159265358979323/100000000000000000")));
    CHECK(pi.lo_double() <= 3.141592653589793);
    CHECK(pi.hi_double() >= 3.141592653589793);
    Interval s = sin(pi);
    CHECK(s.contains_zero());
    CHECK(s.width_double() < 1e-50);
    Interval c = cos(Interval(Rational(0), 100));
    CHECK(c.contains(1));
    Interval e = exp(Interval(Rational(1), 128));
    CHECK(e.lo_double() <= 2.718281828459045);
    CHECK(e.hi_double() >= 2.718281828459045);
    CHECK(log(e).contains(1));
    CHECK(sqrt(Interval(Rational(9, 4), 64)).contains(Rational(3, 2)));
}

TEST_CASE("refine: sqrt2 to 30 bits against integer square root oracle") {
    AlgebraicReal r2(Poly::from_integers({-2, 0, 1}), 1, 2);
    Interval iv = r2.refine(30);
    CHECK(iv.width_double() <= std::ldexp(1.0, -30));
    // oracle: floor(sqrt(2) * 2^40) from the integer square root of 2^81
    Integer big = 1;
    mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), 81);
    Integer isq;
    mpz_sqrt(isq.get_mpz_t(), big.get_mpz_t());
    Rational lo(isq, Integer(1) << 40), hi(Integer(isq + 1), Integer(1) << 40);
    CHECK(iv.lo_rational() <= hi);
    CHECK(iv.hi_rational() >= lo);
    CHECK(iv.mid_double() == doctest::Approx(1.41421356).epsilon(1e-8));
}

TEST_CASE("refine: rational root is a point, plastic root to 20 bits") {
    AlgebraicReal one(Poly::from_integers({-1, 1}), 0, 5);
    Interval p = one.refine(40);
    CHECK(p.is_point());
    CHECK(p.contains(1));

    AlgebraicReal plastic(Poly::from_integers({-1, -1, 0, 1}), 1, 2);
    Interval iv = plastic.refine(20);
    CHECK(iv.width_double() <= std::ldexp(1.0, -20));
    CHECK(iv.mid_double() == doctest::Approx(1.32471795).epsilon(1e-5));
    // f changes sign across the interval: independent containment check
    Poly f = Poly::from_integers({-1, -1, 0, 1});
    CHECK(sgn(f.eval(iv.lo_rational())) < 0);
    CHECK(sgn(f.eval(iv.hi_rational())) > 0);
}

TEST_CASE("refine is monotone up to one ulp of slack") {
    AlgebraicReal r(Poly::from_integers({-5, 0, 0, 1}), 1, 2);
    Interval prev = r.refine(1);
    for (long b = 2; b <= 300; b += 7) {
        Interval cur = r.refine(b);
        Rational slack = Rational(1, Integer(1) << (b + 1));
        CHECK(cur.lo_rational() >= prev.lo_rational() - slack);
        CHECK(cur.hi_rational() <= prev.hi_rational() + slack);
        prev = cur;
    }
    // large targets go through the Newton path and must agree
    Interval big = r.refine(2000);
    CHECK(big.width_log2() <= -2000);
    CHECK(big.contains_zero() == false);
    CHECK((big - r.refine(100)).contains_zero());
}

TEST_CASE("invalid algebraic data is rejected") {
    CHECK_THROWS_AS(AlgebraicReal(Poly::from_integers({-2, 0, 1}), -2, 2), PreconditionError);
    CHECK_THROWS_AS(AlgebraicReal(Poly::from_integers({0, -2, 0, 1}), 1, 2), PreconditionError); // x^3 - 2x reducible
    CHECK_THROWS_AS(AlgebraicReal(Poly::from_integers({-2, 0, 1}), 2, 3), PreconditionError);
}

TEST_CASE("sign_certified examples") {
    AlgebraicReal s2(Poly::from_integers({-2, 0, 1}), 1, 2);
    AlgebraicReal th(Poly::from_integers({-1, -1, 0, 1}), 1, 2);
    RealExpr r(s2), t(th);
    CHECK(sign_certified(r * r - RealExpr(2)) == Sign::zero);
    CHECK(sign_certified(r - RealExpr(Rational(3, 2))) == Sign::negative);
    CHECK(sign_certified(t * t * t - t - RealExpr(1)) == Sign::zero);
    CHECK(sign_certified(t - r) == Sign::negative);
    AlgebraicReal s3(Poly::from_integers({-3, 0, 1}), 1, 2);
    AlgebraicReal s6(Poly::from_integers({-6, 0, 1}), 2, 3);
    RealExpr e = RealExpr(s2) * RealExpr(s3) - RealExpr(s6);
    CHECK(sign_certified(e) == Sign::zero);
    CHECK(sign_certified(RealExpr(s2) + RealExpr(s3) - RealExpr(s6)) == Sign::positive);
}

TEST_CASE("sign_certified agrees with exact rational evaluation") {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 100; ++trial) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        if (trial % 5 == 0)
            c = a * b;
        Rational exact = a * b - c;
        Sign s = sign_certified(RealExpr(a) * RealExpr(b) - RealExpr(c));
        CHECK(static_cast<int>(s) == sgn(exact));
    }
}

TEST_CASE("resultant matches the Sylvester determinant") {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<long> ca(1 + trial % 5), cb(1 + (trial / 5) % 4);
        for (auto& c : ca)
            c = coef(rng);
        for (auto& c : cb)
            c = coef(rng);
        ca.push_back(1 + trial % 3);
        cb.push_back(-1 - trial % 2);
        Poly a = Poly::from_integers(ca), b = Poly::from_integers(cb);
        CHECK(resultant(a, b) == sylvester_resultant(a, b));
    }
}

TEST_CASE("annihilating polynomials for sums and products") {
    Poly p = Poly::from_integers({-2, 0, 1}), q = Poly::from_integers({-3, 0, 1});
    Poly sum = root_sum_poly(p, q).primitive();
    // sqrt2 + sqrt3 has minimal polynomial x^4 - 10x^2 + 1
    CHECK(sum == Poly::from_integers({1, 0, -10, 0, 1}));
    Poly prod = root_product_poly(p, q).squarefree().primitive();
    CHECK(prod == Poly::from_integers({-6, 0, 1}));
}

TEST_CASE("Sturm counts agree with known root locations") {
    Poly f = Poly::from_integers({6, -5, -2, 1}); // (x-1)(x+2)(x-3)
    SturmSequence s(f);
    CHECK(s.count_all() == 3);
    CHECK(s.count(0, 2) == 1);
    CHECK(s.count(-3, 0) == 1);
    CHECK(s.count(Rational(1, 2), 3) == 2);
    CHECK(SturmSequence(Poly::from_integers({1, 0, 1})).count_all() == 0);
}

TEST_CASE("irreducibility is exact") {
    CHECK(is_irreducible(Poly::from_integers({-1, -1, 0, 1})));
    CHECK(is_irreducible(Poly::from_integers({1, 0, 0, 0, 1})));
    CHECK_FALSE(is_irreducible(Poly::from_integers({4, 0, 0, 0, 1}))); // x^4+4 splits into quadratics
    CHECK_FALSE(is_irreducible(Poly::from_integers({-2, -2, 1, 1})));  // (x^2-2)(x+1)
    CHECK(is_irreducible(Poly::from_integers({1, 2, -1, -4, 0, 1})));
    CHECK(is_irreducible(Poly::from_integers({1, 1, -1, -2, -1, 0, 1})));
    CHECK_FALSE(is_irreducible(Poly::from_integers({1, 0, 2, 0, 1}))); // (x^2+1)^2
}

TEST_CASE("root ordering is canonical and conjugation symmetric") {
    RootSet plastic(Poly::from_integers({-1, -1, 0, 1}));
    CHECK(plastic.real_count() == 1);
    CHECK(plastic.complex_pairs() == 1);
    auto b = plastic.boxes(60);
    CHECK(b[0].re.mid_double() == doctest::Approx(1.32471795724));
    CHECK(b[1].re.mid_double() == doctest::Approx(-0.66235897862));
    CHECK(b[1].im.mid_double() == doctest::Approx(0.56227951206));
    CHECK(b[2].im.mid_double() == doctest::Approx(-0.56227951206));
    CHECK(mpfr_equal_p(b[2].re.lo(), b[1].re.lo()));
    CHECK(b[2].im.lo_rational() == -b[1].im.hi_rational());
    CHECK(b[2].im.hi_rational() == -b[1].im.lo_rational());

    // equal real parts: x^4 + 5x^2 + 5 has roots +-1.1756i, +-1.9021i
    RootSet tie(Poly::from_integers({5, 0, 5, 0, 1}));
    CHECK(tie.real_count() == 0);
    auto z = tie.boxes(64);
    CHECK(z[0].im.mid_double() == doctest::Approx(1.1755705));
    CHECK(z[1].im.mid_double() == doctest::Approx(1.9021130));
}

TEST_CASE("Smith normal form and integer kernel") {
    IntMat a = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    SmithForm s = smith_normal_form(a);
    CHECK(s.rank == 3);
    CHECK(s.D[0][0] == 2);
    CHECK(s.D[1][1] == 6);
    CHECK(s.D[2][2] == 12);
    CHECK(matmul(matmul(s.U, a), s.V) == s.D);

    IntMat b = {{1, 2, 0}, {0, 0, 2}};
    auto ker = integer_kernel(b, 3);
    REQUIRE(ker.size() == 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
        Integer acc = 0;
        for (int j = 0; j < 3; ++j)
            acc += b[i][j] * ker[0][j];
        CHECK(acc == 0);
    }
    CHECK(abs(ker[0][0]) == 2);
}
