#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symdet/engine.hpp"
#include "symdet/instancegen.hpp"
#include "symdet/oracle.hpp"
#include "test_util.hpp"

using namespace symdet;
using testutil::p;

TEST_CASE("worked example end to end") {
    PipelineReport r = compute_determinant(testutil::example31());
    CHECK(r.determinant == testutil::example31_det());
    CHECK(r.verified);
    CHECK(r.escalations == 0);
    CHECK(r.degree_bounds.bounds() == std::vector<std::uint64_t>{2, 3, 3});
    CHECK(r.reduced);
    CHECK(r.plan.pack[0] == 4);                               // x1 -> x2^4
    CHECK(r.solve_bounds == std::vector<std::uint64_t>{10, 3});
    CHECK(r.node_count == 44);                                // (10+1)*(3+1)
    CHECK(r.epsilon == mpq_class(1, 134217728));
    CHECK(r.max_residual < 0.25);
}

TEST_CASE("order-1 instance touches two nodes only") {
    VarSet vs = default_varset(1);
    PolyMatrix m(vs, 1);
    m.set(0, 0, p("x1+1", vs));
    PipelineReport r = compute_determinant(m);
    CHECK(r.determinant == p("x1+1", vs));
    CHECK(r.node_count == 2);
    CHECK(r.verified);
}

TEST_CASE("zero determinant is a legal verified output") {
    VarSet vs = default_varset(2);
    PolyMatrix m(vs, 2);
    m.set(0, 0, p("x1", vs));
    m.set(0, 1, p("x1*x2", vs));
    m.set(1, 0, p("3", vs));
    m.set(1, 1, p("3*x2", vs));
    PipelineReport r = compute_determinant(m);
    CHECK(r.determinant.is_zero());
    CHECK(r.verified);

    PolyMatrix zero(vs, 3);
    PipelineReport rz = compute_determinant(zero);
    CHECK(rz.determinant.is_zero());
    CHECK(rz.verified);
}

TEST_CASE("config validation") {
    PipelineConfig bad;
    bad.verify_nodes = 0;
    CHECK_THROWS_AS(compute_determinant(testutil::example31(), bad), config_error);

    PipelineConfig nondyadic;
    nondyadic.lambda = mpq_class(1, 3);
    CHECK_THROWS_AS(compute_determinant(testutil::example31(), nondyadic), config_error);
}

TEST_CASE("under-estimated starting bounds are repaired by escalation") {
    PipelineConfig cfg;
    cfg.initial_bounds = std::vector<std::uint64_t>{1, 1, 1};
    cfg.max_escalations = 6;
    PipelineReport r = compute_determinant(testutil::example31(), cfg);
    CHECK(r.determinant == testutil::example31_det());
    CHECK(r.verified);
    CHECK(r.escalations >= 1);

    // With no escalation budget the same start must fail loudly.
    PipelineConfig stuck = cfg;
    stuck.max_escalations = 0;
    CHECK_THROWS_AS(compute_determinant(testutil::example31(), stuck), nonconvergence_error);
    try {
        compute_determinant(testutil::example31(), stuck);
    } catch (const nonconvergence_error& e) {
        CHECK_FALSE(e.best().verified);
        CHECK(e.best().bounds_used == std::vector<std::uint64_t>{1, 1, 1});
    }
}

TEST_CASE("cancellation-heavy block instance stays exact") {
    // Top-left 2x2 block of identical entries: its minor is identically zero,
    // which degrades interior pivots of the degree recursion.
    VarSet vs = default_varset(1);
    PolyMatrix m(vs, 4);
    const char* rows[4][4] = {
        {"x1", "x1", "1", "2"},
        {"x1", "x1", "3", "4"},
        {"5", "6", "x1", "7"},
        {"8", "9", "10", "x1"},
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m.set(i, j, p(rows[i][j], vs));

    const Polynomial truth = det_symbolic_bareiss(m);
    PipelineConfig cfg;
    cfg.max_escalations = 6;
    PipelineReport r = compute_determinant(m, cfg);
    CHECK(r.determinant == truth);
    CHECK(r.verified);
    // The estimate must never under-shoot the true degree.
    CHECK(r.degree_bounds.per_var[0].bound >= truth.degree_in(std::size_t{0}));
}

TEST_CASE("grid evaluation: cell count, determinism across worker counts") {
    PolyMatrix m = testutil::example31();
    std::vector<std::uint64_t> b = {2, 3, 3};
    SubstitutionPlan plan = make_plan(b, m.vars());
    PolyMatrix reduced = reduce_matrix(m, plan);
    std::vector<std::uint64_t> rb = {10, 3};
    auto axes = make_axes(rb, mpq_class(1, 2), mpq_class(1, 2));

    Tensor one = evaluate_grid(reduced, axes, 192, EvalMode::Approx, 1);
    CHECK(one.size() == 44);
    Tensor eight = evaluate_grid(reduced, axes, 192, EvalMode::Approx, 8);
    REQUIRE(eight.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == eight[i]);

    Tensor exact1 = evaluate_grid(reduced, axes, 192, EvalMode::ExactDyadic, 1);
    Tensor exact5 = evaluate_grid(reduced, axes, 192, EvalMode::ExactDyadic, 5);
    for (std::size_t i = 0; i < exact1.size(); ++i) CHECK(exact1[i] == exact5[i]);
}

TEST_CASE("verification accepts truth and rejects perturbations") {
    PolyMatrix m = testutil::example31();
    const Polynomial truth = det_symbolic_bareiss(m);
    for (int k : {1, 3, 7}) CHECK(verify_at_nodes(truth, m, k).ok);

    Polynomial off_by_one = truth + Polynomial::constant(m.vars(), 1);
    const VerifyOutcome bad = verify_at_nodes(off_by_one, m, 4);
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness_point.size() == 3);
    CHECK(bad.candidate_value != bad.determinant_value);
    CHECK(bad.candidate_value == off_by_one.eval_exact(bad.witness_point));

    VarSet vs = default_varset(2);
    PolyMatrix zero(vs, 2);
    CHECK(verify_at_nodes(Polynomial(vs), zero, 2).ok);
}

TEST_CASE("reduction on and off produce the same polynomial") {
    SplitMix64 rng(880);
    VarSet vs = default_varset(3);
    for (int trial = 0; trial < 12; ++trial) {
        PolyMatrix m(vs, 2 + rng.below(2));
        for (std::size_t i = 0; i < m.order(); ++i)
            for (std::size_t j = 0; j < m.order(); ++j)
                m.set(i, j, testutil::random_poly(rng, vs, 2, 9, 1 + rng.below(3)));

        PipelineConfig on;
        on.reduce = PipelineConfig::Reduce::On;
        PipelineConfig off;
        off.reduce = PipelineConfig::Reduce::Off;
        PipelineReport r_on = compute_determinant(m, on);
        PipelineReport r_off = compute_determinant(m, off);
        CHECK(r_on.determinant == r_off.determinant);
        CHECK(r_on.verified);
        CHECK(r_off.verified);
        CHECK_FALSE(r_off.reduced);
    }
}

TEST_CASE("exact evaluation mode matches the oracle too") {
    SplitMix64 rng(881);
    VarSet vs = default_varset(2);
    for (int trial = 0; trial < 8; ++trial) {
        PolyMatrix m(vs, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.set(i, j, testutil::random_poly(rng, vs, 2, 9, 1 + rng.below(3)));
        PipelineConfig cfg;
        cfg.eval_mode = EvalMode::ExactDyadic;
        PipelineReport r = compute_determinant(m, cfg);
        CHECK(r.determinant == det_symbolic_bareiss(m));
    }
}

TEST_CASE("four and five variables pack into both targets") {
    SplitMix64 rng(883);
    for (std::size_t v : {std::size_t{4}, std::size_t{5}}) {
        VarSet vs = default_varset(v);
        for (int trial = 0; trial < 4; ++trial) {
            PolyMatrix m(vs, 2 + rng.below(2));
            for (std::size_t i = 0; i < m.order(); ++i)
                for (std::size_t j = 0; j < m.order(); ++j)
                    m.set(i, j, testutil::random_poly(rng, vs, 2, 9, 1 + rng.below(3)));
            PipelineReport r = compute_determinant(m);
            CHECK(r.determinant == det_symbolic_bareiss(m));
            CHECK(r.verified);
            CHECK(r.reduced);
        }
    }
}

TEST_CASE("negative node offsets still recover exactly") {
    SplitMix64 rng(884);
    VarSet vs = default_varset(2);
    PipelineConfig cfg;
    cfg.offset = mpq_class(-2);
    for (int trial = 0; trial < 6; ++trial) {
        PolyMatrix m(vs, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.set(i, j, testutil::random_poly(rng, vs, 2, 9, 1 + rng.below(3)));
        PipelineReport r = compute_determinant(m, cfg);
        CHECK(r.determinant == det_symbolic_bareiss(m));
        CHECK(r.verified);
    }
}

TEST_CASE("single-axis grids hold one value per node") {
    VarSet vs = default_varset(1);
    PolyMatrix m(vs, 2);
    m.set(0, 0, p("7", vs));
    m.set(1, 1, p("2", vs));
    std::vector<std::uint64_t> zero_bound = {0};
    auto axes = make_axes(zero_bound, mpq_class(1, 2), mpq_class(1, 2));
    Tensor t = evaluate_grid(m, axes, 96, EvalMode::Approx, 1);
    CHECK(t.size() == 1);
    CHECK(t[0] == BigFloat::from_si(14, 96));
}

TEST_CASE("property: pipeline output equals the exact oracle") {
    SplitMix64 rng(882);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t v = 1 + rng.below(3);
        VarSet vs = default_varset(v);
        PolyMatrix m(vs, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.set(i, j, testutil::random_poly(rng, vs, 2, 9, 1 + rng.below(4)));
        PipelineReport r = compute_determinant(m);
        CHECK(r.determinant == det_symbolic_bareiss(m));
        CHECK(r.verified);
    }
}

TEST_CASE("identical runs produce identical reports") {
    PolyMatrix m = testutil::example31();
    PipelineConfig cfg;
    cfg.threads = 2;
    PipelineReport a = compute_determinant(m, cfg);
    cfg.threads = 7;
    PipelineReport b = compute_determinant(m, cfg);
    CHECK(a.determinant == b.determinant);
    CHECK(a.epsilon == b.epsilon);
    CHECK(a.precision_bits == b.precision_bits);
    CHECK(a.node_count == b.node_count);
    CHECK(a.solve_bounds == b.solve_bounds);
    CHECK(a.max_residual == b.max_residual);
}
