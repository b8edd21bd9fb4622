#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symdet/instancegen.hpp"
#include "symdet/kronmap.hpp"
#include "symdet/numdet.hpp"
#include "symdet/vandersolve.hpp"
#include "test_util.hpp"

using namespace symdet;
using testutil::p;

namespace {

// Random dyadic rational in [-mag, mag] with denominator up to 2^3.
mpq_class random_dyadic(SplitMix64& rng, long mag) {
    const long den_pow = static_cast<long>(rng.below(4));
    mpq_class q(rng.range(-mag << den_pow, mag << den_pow), 1L << den_pow);
    q.canonicalize();
    return q;
}

std::vector<mpq_class> random_dyadic_matrix(SplitMix64& rng, std::size_t n, long mag) {
    std::vector<mpq_class> a(n * n);
    for (auto& x : a) x = random_dyadic(rng, mag);
    return a;
}

std::vector<BigFloat> to_floats(const std::vector<mpq_class>& qs, mpfr_prec_t prec) {
    std::vector<BigFloat> out;
    out.reserve(qs.size());
    for (const auto& q : qs) out.push_back(BigFloat::from_mpq(q, prec));
    return out;
}

// Independent exact oracle for the exact kernel: Laplace expansion on mpq.
mpq_class det_cofactor_q(const std::vector<mpq_class>& a, std::size_t n) {
    if (n == 1) return a[0];
    mpq_class acc(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (a[c] == 0) continue;
        std::vector<mpq_class> sub;
        sub.reserve((n - 1) * (n - 1));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) sub.push_back(a[i * n + j]);
        const mpq_class term = a[c] * det_cofactor_q(sub, n - 1);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

} // namespace

TEST_CASE("det_approx: identity, closed 2x2 form, zero column") {
    const mpfr_prec_t prec = 96;
    std::vector<BigFloat> eye = to_floats({1, 0, 0, 0, 1, 0, 0, 0, 1}, prec);
    CHECK(det_approx(eye, 3, prec) == BigFloat::from_si(1, prec));

    SplitMix64 rng(660);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpq_class> q = random_dyadic_matrix(rng, 2, 32);
        const BigFloat det = det_approx(to_floats(q, prec), 2, prec);
        const mpq_class expect = q[0] * q[3] - q[1] * q[2];
        const double err =
            BigFloat::sub(det, BigFloat::from_mpq(expect, prec), 96, MPFR_RNDN).abs().to_double();
        CHECK(err <= 4.0 * std::ldexp(1.0, 2 - static_cast<int>(prec)) * 33.0 * 33.0);
    }

    std::vector<BigFloat> singular = to_floats({1, 0, 2, 3, 0, 4, 5, 0, 6}, prec);
    CHECK(det_approx(singular, 3, prec).is_zero());
}

TEST_CASE("det_exact_dyadic: identity, proportional rows, cofactor cross-check") {
    std::vector<mpq_class> eye = {1, 0, 0, 1};
    CHECK(det_exact_dyadic(eye, 2) == 1);

    std::vector<mpq_class> prop = {mpq_class(1, 2), 1, 1, 2};
    CHECK(det_exact_dyadic(prop, 2) == 0);

    // Zero pivot forces the row-swap path.
    std::vector<mpq_class> swap_needed = {0, 1, 1, 0};
    CHECK(det_exact_dyadic(swap_needed, 2) == -1);

    SplitMix64 rng(661);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(5);
        std::vector<mpq_class> a = random_dyadic_matrix(rng, n, 8);
        CHECK(det_exact_dyadic(a, n) == det_cofactor_q(a, n));
    }
}

TEST_CASE("hadamard bound") {
    const mpfr_prec_t prec = 96;
    std::vector<BigFloat> eye = to_floats({1, 0, 0, 0, 1, 0, 0, 0, 1}, prec);
    CHECK(hadamard_bound(eye, 3) == BigFloat::from_si(1, prec));

    std::vector<BigFloat> rows = to_floats({3, 4, 0, 5}, prec);
    CHECK(hadamard_bound(rows, 2) == BigFloat::from_si(25, prec));

    SplitMix64 rng(662);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(5);
        std::vector<mpq_class> a = random_dyadic_matrix(rng, n, 16);
        const mpq_class det = det_exact_dyadic(a, n);
        const BigFloat bound = hadamard_bound(to_floats(a, prec), n);
        CHECK(BigFloat::from_mpq(abs(det), prec) <= bound);
    }
}

TEST_CASE("choose_precision: formula values and monotonicity") {
    CHECK(choose_precision(mpq_class(1, 2), BigFloat::from_si(1, 64), 1) == 38);

    // Halving epsilon adds exactly one bit.
    mpq_class eps(3, 64);
    mpfr_prec_t prev = choose_precision(eps, BigFloat::from_si(100, 64), 4);
    for (int i = 0; i < 20; ++i) {
        eps /= 2;
        const mpfr_prec_t next = choose_precision(eps, BigFloat::from_si(100, 64), 4);
        CHECK(next == prev + 1);
        prev = next;
    }

    // Monotone in the magnitude bound and the order.
    CHECK(choose_precision(mpq_class(1, 1024), BigFloat::from_si(10, 64), 3) <=
          choose_precision(mpq_class(1, 1024), BigFloat::from_si(1000, 64), 3));
    CHECK(choose_precision(mpq_class(1, 1024), BigFloat::from_si(10, 64), 3) <=
          choose_precision(mpq_class(1, 1024), BigFloat::from_si(10, 64), 9));

    // The example path: eps = 0.745e-8 needs at least 60 bits.
    CHECK(choose_precision(mpq_class(1, 134217728), BigFloat::from_si(1, 64), 2) >= 60);
}

TEST_CASE("reduced example node agrees across modes within the budget") {
    PolyMatrix m = testutil::example31();
    std::vector<std::uint64_t> b = {2, 3, 3};
    SubstitutionPlan plan = make_plan(b, m.vars());
    PolyMatrix reduced = reduce_matrix(m, plan);

    std::vector<mpq_class> point = {mpq_class(1, 2), mpq_class(1, 2)};
    std::vector<mpq_class> cells(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) cells[i * 2 + j] = reduced.at(i, j).eval_exact(point);

    const mpq_class eps(1, 134217728);
    const mpfr_prec_t prec = choose_precision(eps, hadamard_bound(to_floats(cells, 96), 2), 2);
    const BigFloat approx = det_approx(to_floats(cells, prec), 2, prec);
    const mpq_class exact = det_exact_dyadic(cells, 2);
    const double err =
        BigFloat::sub(approx, BigFloat::from_mpq(exact, prec), 96, MPFR_RNDN).abs().to_double();
    CHECK(err < eps.get_d());
}

TEST_CASE("property: mode agreement at chosen precision") {
    SplitMix64 rng(663);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        std::vector<mpq_class> a = random_dyadic_matrix(rng, n, 32);
        const mpq_class eps = mpq_class(1, 1) / (1 << (3 + rng.below(24)));
        const BigFloat bound = hadamard_bound(to_floats(a, 96), n);
        const mpfr_prec_t prec = choose_precision(eps, bound, n);

        const BigFloat approx = det_approx(to_floats(a, prec), n, prec);
        const mpq_class exact = det_exact_dyadic(a, n);
        BigFloat diff =
            BigFloat::sub(approx, BigFloat::from_mpq(exact, prec), prec, MPFR_RNDN).abs();
        CHECK(diff < BigFloat::from_mpq(eps, prec));

        // Doubling the precision moves the value by less than eps/2.
        const BigFloat twice = det_approx(to_floats(a, 2 * prec), n, 2 * prec);
        BigFloat drift = BigFloat::sub(approx, twice, 2 * prec, MPFR_RNDN).abs();
        CHECK(drift < BigFloat::from_mpq(eps / 2, prec));
    }
}

TEST_CASE("property: multiplicativity and equal rows") {
    SplitMix64 rng(664);
    const mpfr_prec_t prec = 160;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpq_class> a = random_dyadic_matrix(rng, 3, 8);
        std::vector<mpq_class> b = random_dyadic_matrix(rng, 3, 8);
        std::vector<mpq_class> ab(9, mpq_class(0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k) ab[i * 3 + j] += a[i * 3 + k] * b[k * 3 + j];
        CHECK(det_exact_dyadic(ab, 3) == det_exact_dyadic(a, 3) * det_exact_dyadic(b, 3));

        const BigFloat fa = det_approx(to_floats(a, prec), 3, prec);
        const BigFloat fb = det_approx(to_floats(b, prec), 3, prec);
        const BigFloat fab = det_approx(to_floats(ab, prec), 3, prec);
        const double err = BigFloat::sub(fab, fa * fb, prec, MPFR_RNDN).abs().to_double();
        CHECK(err <= 1e-20);

        // Two equal rows: below any sensible budget at this precision.
        std::vector<mpq_class> dup = a;
        for (std::size_t j = 0; j < 3; ++j) dup[2 * 3 + j] = dup[0 * 3 + j];
        CHECK(det_approx(to_floats(dup, prec), 3, prec).abs().to_double() < 1e-30);
        CHECK(det_exact_dyadic(dup, 3) == 0);
    }
}
