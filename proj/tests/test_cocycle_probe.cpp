#include <doctest.h>

#include "cousinlab/cocycle_probe.hpp"
#include "cousinlab/errors.hpp"

#include <cmath>

using namespace cousinlab;

namespace {

ExactReal sqrt2() { return ExactReal::from_algebraic(AlgebraicReal(Poly::from_integers({-2, 0, 1}), 1, 2)); }

bool overlaps(const Interval& a, const Interval& b) {
    return !(a.hi_rational() < b.lo_rational() || b.hi_rational() < a.lo_rational());
}

// z + sum_i c_i v_i
std::vector<ExactComplex> translate(const PeriodMatrix& P, std::vector<ExactComplex> z, const std::vector<Integer>& c) {
    auto cols = P.columns();
    for (std::size_t r = 0; r < z.size(); ++r)
        for (std::size_t i = 0; i < c.size(); ++i)
            z[r] += cols[r][i] * ExactComplex(Rational(c[i]));
    return z;
}

std::vector<Integer> add(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        s[i] = a[i] + b[i];
    return s;
}

WitnessSequence synthetic(const Rational& a, int count) {
    WitnessSequence w;
    w.a = a;
    w.domain_tag = {1};
    for (int k = 1; k <= count; ++k) {
        Rational ak = 1;
        for (int i = 0; i < k; ++i)
            ak *= a;
        w.items.push_back({k, {Integer(k)}, {}, k, Interval(ak, 128), Interval(ak, 128)});
    }
    w.complete = true;
    return w;
}

} // namespace

TEST_CASE("eta values") {
    PeriodMatrix H = example_matrix(ExactReal(Rational(1, 2)));
    CHECK(eta_sigma(H, {1}).contains(Rational(2)));
    CHECK(eta_sigma(H, {1}).relative_width_at_most(30));
    CHECK(eta_sigma(H, {2}).is_point());
    CHECK(eta_sigma(H, {2}).contains(Rational(0)));
    PeriodMatrix P = example_matrix(sqrt2());
    DistanceEngine eng(P);
    Interval two_pi = Interval(Rational(2), 128) * Interval::pi(128);
    for (long s = 1; s <= 300; ++s) {
        Interval e = eta_sigma(P, {s});
        CHECK(e.positive());
        CHECK((two_pi * eng({s}).d).hi_rational() >= e.lo_rational());
    }
    CHECK_THROWS_AS(eta_sigma(P, {0}), PreconditionError);
}

TEST_CASE("witness search on sqrt2") {
    PeriodMatrix P = example_matrix(sqrt2());
    auto w = find_witnesses(P, ratio(9, 10), 3, 1000);
    CHECK(w.complete);
    REQUIRE(w.items.size() == 3);
    CHECK(w.items[0].sigma == std::vector<Integer>{1});
    CHECK(w.items[1].sigma == std::vector<Integer>{2});
    for (std::size_t i = 0; i < w.items.size(); ++i) {
        const auto& it = w.items[i];
        Rational bound = 1;
        for (long j = 0; j < it.norm; ++j)
            bound *= ratio(9, 10);
        CHECK(it.d.hi_rational() < bound / it.k);
        CHECK(eta_sigma(P, it.sigma).hi_rational() <= it.eta.hi_rational());
        if (i > 0)
            CHECK(w.items[i - 1].norm < it.norm);
    }
    // the norm bound d >= C / (1 + |sigma|) outruns 0.9^|sigma| / k: the sequence stalls
    auto longer = find_witnesses(P, ratio(9, 10), 20, 2000);
    CHECK_FALSE(longer.complete);
    CHECK(longer.items.size() < 20);
    CHECK_THROWS_AS(find_witnesses(example_matrix(ExactReal(Rational(1, 2))), Rational(1, 2), 3, 10),
                    PreconditionError);
    CHECK_THROWS_AS(find_witnesses(P, Rational(1), 3, 10), SchemaError);
}

TEST_CASE("witness search keeps one orthant") {
    ExactReal r2 = sqrt2();
    PeriodMatrix P(3, 1, {{ExactReal(0)}}, {{ExactReal(1)}}, {{r2}, {ExactReal(Rational(1, 3))}},
                   {{ExactReal(Rational(1, 7))}, {r2}});
    auto w = find_witnesses(P, ratio(9, 10), 4, 60);
    REQUIRE(w.domain_tag.size() == 2);
    for (const auto& it : w.items)
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(it.sigma[i] * w.domain_tag[i] >= 0);
}

TEST_CASE("cocycle values") {
    PeriodMatrix P = example_matrix(sqrt2());
    auto w = find_witnesses(P, ratio(9, 10), 3, 1000);
    std::vector<ExactComplex> z = {ExactComplex(Rational(1, 3), Rational(2)), ExactComplex(Rational(1, 5), Rational(1, 4))};
    Rational x = Rational(1, 2);

    auto v1 = evaluate_cocycle(P, x, {1, 0, 0}, z, w, 3);
    CHECK(v1.value.re.is_point());
    CHECK(v1.value.re.contains(Rational(0)));
    CHECK(v1.value.im.contains(Rational(0)));
    auto v0 = evaluate_cocycle(P, x, {0, 0, 0}, z, w, 3);
    CHECK(v0.value.re.contains(Rational(0)));
    CHECK(v0.tail_bound.hi_rational() == 0);

    std::vector<Integer> l1 = {0, 1, 0}, l2 = {2, 1, 1};
    auto a12 = evaluate_cocycle(P, x, add(l1, l2), z, w, 3);
    auto a1 = evaluate_cocycle(P, x, l1, translate(P, z, l2), w, 3);
    auto a2 = evaluate_cocycle(P, x, l2, z, w, 3);
    CHECK_FALSE(a12.value.contains_zero());
    Interval slack = a12.tail_bound + a1.tail_bound + a2.tail_bound;
    ComplexInterval resid = a12.value - a1.value - a2.value;
    CHECK(resid.abs().lo_rational() <= slack.hi_rational());
    // exact per-term identity: the residual is at rounding level
    CHECK(resid.abs().hi_double() < 1e-20);

    // splitting the witness list splits the sum
    WitnessSequence head = w, tail = w;
    head.items.resize(2);
    tail.items.erase(tail.items.begin(), tail.items.begin() + 2);
    auto whole = evaluate_cocycle(P, x, l1, z, w, 3);
    auto h = evaluate_cocycle(P, x, l1, z, head, 2);
    auto t = evaluate_cocycle(P, x, l1, z, tail, 1);
    CHECK(overlaps(whole.value.re, h.value.re + t.value.re));
    CHECK(overlaps(whole.value.im, h.value.im + t.value.im));

    std::vector<ExactComplex> below = {ExactComplex(0), ExactComplex(Rational(0), Rational(-1))};
    CHECK_THROWS_AS(evaluate_cocycle(P, x, l1, below, w, 3), PreconditionError);
    CHECK_THROWS_AS(evaluate_cocycle(P, x, l1, z, w, 4), PreconditionError);
}

TEST_CASE("radius estimates") {
    auto w = synthetic(Rational(1, 2), 12);
    auto rep = radius_report({Rational(1, 4), Rational(3, 4)}, w);
    REQUIRE(rep.radii.size() == 2);
    CHECK(rep.radii[0].radius == doctest::Approx(std::pow(0.5, 0.75)).epsilon(1e-9));
    CHECK(rep.radii[1].radius == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-9));
    CHECK(rep.radii[0].radius == doctest::Approx(0.5946).epsilon(1e-4));
    CHECK(rep.radii[1].radius == doctest::Approx(0.8409).epsilon(1e-4));
    CHECK(rep.rho_estimate == doctest::Approx(0.5));
    CHECK(rep.rho_le_a);
    CHECK(rep.radii_increasing);
    CHECK(rep.radii_below_one);
    CHECK(rep.separation_ok);

    auto one = radius_report({Rational(1, 2)}, w);
    CHECK(one.separation_ok);
    CHECK_THROWS_AS(radius_report({Rational(1, 2)}, synthetic(Rational(1, 2), 9)), PreconditionError);
    CHECK_THROWS_AS(radius_report({Rational(3, 4), Rational(1, 4)}, w), SchemaError);
    CHECK_THROWS_AS(radius_report({Rational(1)}, w), SchemaError);
}
