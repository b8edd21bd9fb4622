#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symdet/instancegen.hpp"
#include "symdet/polynomial.hpp"
#include "test_util.hpp"

using namespace symdet;
using testutil::p;

TEST_CASE("addition: cancellation, identity, example entry") {
    VarSet vs = testutil::vars3();
    CHECK(p("x1+1", vs) + p("-x1+1", vs) == p("2", vs));
    Polynomial zero(vs);
    Polynomial q = p("5*x1^2-3*x1*x2+2*x3^2", vs);
    CHECK(zero + q == q);

    // M11 of the worked example decomposes into its three terms.
    CHECK(p("5*x1^2-3*x1*x2", vs) + p("2*x3^2", vs) == q);
    CHECK(q.term_count() == 3);
    CHECK(q.terms().find(Monomial({2, 0, 0}))->second == 5);
    CHECK(q.terms().find(Monomial({1, 1, 0}))->second == -3);
    CHECK(q.terms().find(Monomial({0, 0, 2}))->second == 2);
}

TEST_CASE("multiplication: unit, difference of squares, example 2x2 determinant") {
    VarSet vs = testutil::vars3();
    Polynomial q = p("7*x1*x3-2", vs);
    CHECK(q * p("1", vs) == q);
    CHECK(p("x1-1", vs) * p("x1+1", vs) == p("x1^2-1", vs));

    PolyMatrix m = testutil::example31();
    Polynomial det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    CHECK(det == testutil::example31_det());
    CHECK(det.term_count() == 14);
}

TEST_CASE("mismatched variable sets are rejected") {
    VarSet a({"x1"});
    VarSet b({"y1"});
    CHECK_THROWS_AS(Polynomial::variable(a, 0) + Polynomial::variable(b, 0), instance_error);
    CHECK_THROWS_AS(Polynomial::variable(a, 0) * Polynomial::variable(b, 0), instance_error);
}

TEST_CASE("divexact: closed forms and misuse") {
    VarSet vs = testutil::vars3();
    CHECK(divexact(p("x1^2-1", vs), p("x1-1", vs)) == p("x1+1", vs));
    Polynomial q = p("3*x2^2-x1", vs);
    CHECK(divexact(q, p("1", vs)) == q);
    CHECK(divexact(p("x1+x2", vs) * p("3*x2-5", vs), p("x1+x2", vs)) == p("3*x2-5", vs));
    CHECK_THROWS_AS(divexact(p("x1^2+1", vs), p("x1", vs)), divisibility_error);
    CHECK_THROWS_AS(divexact(p("3*x1", vs), p("2", vs)), divisibility_error);
    CHECK_THROWS_AS(divexact(p("x1", vs), Polynomial(vs)), divisibility_error);
}

TEST_CASE("degree queries") {
    VarSet vs = testutil::vars3();
    CHECK(p("5*x1^2-3*x1*x2+2*x3^2", vs).degree_in("x1") == 2);
    CHECK(Polynomial(vs).degree_in("x1") == 0);
    CHECK(p("x2+3*x2*x3", vs).degree_in("x3") == 1);
    CHECK(p("7", vs).degree_in("x2") == 0);
    CHECK_THROWS_AS(p("x1", vs).degree_in("zz"), instance_error);
}

TEST_CASE("floating evaluation") {
    VarSet vs2 = default_varset(2);
    std::vector<BigFloat> origin = {BigFloat::from_si(0, 64), BigFloat::from_si(0, 64)};
    CHECK(p("x1+x2", vs2).eval(origin, 64).is_zero());

    VarSet vs = testutil::vars3();
    std::vector<BigFloat> pt = {BigFloat::from_si(0, 64), BigFloat::from_si(0, 64),
                                BigFloat::from_si(2, 64)};
    CHECK(p("2*x3^3", vs).eval(pt, 64) == BigFloat::from_si(16, 64));

    // Sum of the determinant's 14 integer coefficients.
    std::vector<BigFloat> ones = {BigFloat::from_si(1, 128), BigFloat::from_si(1, 128),
                                  BigFloat::from_si(1, 128)};
    CHECK(testutil::example31_det().eval(ones, 128) == BigFloat::from_si(27, 128));
    std::vector<mpq_class> ones_q = {1, 1, 1};
    CHECK(testutil::example31_det().eval_exact(ones_q) == 27);
}

TEST_CASE("exact evaluation and float cross-check") {
    VarSet vs1 = default_varset(1);
    std::vector<mpq_class> pt = {mpq_class(7, 2)};
    CHECK(p("x1", vs1).eval_exact(pt) == mpq_class(7, 2));
    std::vector<mpq_class> half = {mpq_class(1, 2)};
    CHECK(p("x1^2", vs1).eval_exact(half) == mpq_class(1, 4));

    SplitMix64 rng(101);
    VarSet vs = testutil::vars3();
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial q = testutil::random_poly(rng, vs, 4, 99);
        std::vector<mpq_class> point_q;
        std::vector<BigFloat> point_f;
        for (int i = 0; i < 3; ++i) {
            mpq_class c(rng.range(-64, 64), 1 << rng.below(4));
            c.canonicalize();
            point_q.push_back(c);
            point_f.push_back(BigFloat::from_mpq(c, 512));
        }
        const mpq_class exact = q.eval_exact(point_q);
        const BigFloat approx = q.eval(point_f, 512);
        BigFloat diff = BigFloat::sub(approx, BigFloat::from_mpq(exact, 512), 512, MPFR_RNDN).abs();
        BigFloat tol = BigFloat::from_si(1, 512);
        mpfr_mul_2si(tol.raw(), tol.raw(), -400, MPFR_RNDN);
        BigFloat scale = BigFloat::from_mpq(abs(exact) + 1, 512);
        CHECK(diff <= BigFloat::mul(tol, scale, 512, MPFR_RNDN));
    }
}

TEST_CASE("property: ring axioms on random triples") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t v = 1 + rng.below(4);
        VarSet vs = default_varset(v);
        Polynomial a = testutil::random_poly(rng, vs, 4, 99);
        Polynomial b = testutil::random_poly(rng, vs, 4, 99);
        Polynomial c = testutil::random_poly(rng, vs, 4, 99);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("property: degree laws over the integers") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t v = 1 + rng.below(3);
        VarSet vs = default_varset(v);
        Polynomial a = testutil::random_poly(rng, vs, 3, 9);
        Polynomial b = testutil::random_poly(rng, vs, 3, 9);
        if (a.is_zero() || b.is_zero()) continue;
        for (std::size_t x = 0; x < v; ++x) {
            CHECK((a * b).degree_in(x) == a.degree_in(x) + b.degree_in(x));
            const Polynomial s = a + b;
            if (!s.is_zero())
                CHECK(s.degree_in(x) <= std::max(a.degree_in(x), b.degree_in(x)));
        }
    }
}

TEST_CASE("property: multiply-then-divide round trip") {
    SplitMix64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t v = 1 + rng.below(3);
        VarSet vs = default_varset(v);
        Polynomial a = testutil::random_poly(rng, vs, 3, 9);
        Polynomial b = testutil::random_poly(rng, vs, 3, 9);
        if (b.is_zero()) continue;
        CHECK(divexact(a * b, b) == a);
    }
}

TEST_CASE("property: doubling precision converges") {
    SplitMix64 rng(10);
    VarSet vs = default_varset(2);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial q = testutil::random_poly(rng, vs, 5, 999);
        if (q.is_zero()) continue;
        std::vector<mpq_class> pq = {mpq_class(rng.range(-40, 40), 4),
                                     mpq_class(rng.range(-40, 40), 8)};
        for (auto& c : pq) c.canonicalize();
        for (mpfr_prec_t prec : {64, 128, 256}) {
            std::vector<BigFloat> lo = {BigFloat::from_mpq(pq[0], prec),
                                        BigFloat::from_mpq(pq[1], prec)};
            std::vector<BigFloat> hi = {BigFloat::from_mpq(pq[0], 2 * prec),
                                        BigFloat::from_mpq(pq[1], 2 * prec)};
            BigFloat a = q.eval(lo, prec);
            BigFloat b = q.eval(hi, 2 * prec);
            BigFloat diff = BigFloat::sub(a, b, 2 * prec, MPFR_RNDN).abs();
            BigFloat rel_tol = b.abs() + BigFloat::from_si(1, 2 * prec);
            mpfr_mul_2si(rel_tol.raw(), rel_tol.raw(), 8 - static_cast<long>(prec), MPFR_RNDN);
            CHECK(diff <= rel_tol);
        }
    }
}
