#include <benchmark/benchmark.h>

#include "symdet/engine.hpp"
#include "symdet/instancegen.hpp"
#include "symdet/numdet.hpp"
#include "symdet/oracle.hpp"
#include "symdet/vandersolve.hpp"

using namespace symdet;

static void BM_PolyMul(benchmark::State& state) {
    SplitMix64 rng(1);
    VarSet vs = default_varset(3);
    Polynomial a = random_dense_poly(rng, vs, state.range(0), 9);
    Polynomial b = random_dense_poly(rng, vs, state.range(0), 9);
    for (auto _ : state) {
        Polynomial c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_PolyMul)->DenseRange(1, 4);

static void BM_BpSolve(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    const mpfr_prec_t prec = 256;
    std::vector<std::uint64_t> bounds = {d};
    auto axes = make_axes(bounds, mpq_class(1, 2), mpq_class(1, 2));
    std::vector<BigFloat> nodes, values;
    SplitMix64 rng(2);
    for (const auto& q : axes[0].nodes) {
        nodes.push_back(BigFloat::from_mpq(q, prec));
        values.push_back(BigFloat::from_si(rng.range(-999, 999), prec));
    }
    for (auto _ : state) {
        auto a = bp_solve(nodes, values);
        benchmark::DoNotOptimize(a);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BpSolve)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNSquared);

static void BM_DetApprox(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const mpfr_prec_t prec = 512;
    SplitMix64 rng(3);
    std::vector<BigFloat> cells;
    for (std::size_t i = 0; i < n * n; ++i)
        cells.push_back(BigFloat::from_si(rng.range(-999, 999), prec));
    for (auto _ : state) {
        BigFloat d = det_approx(cells, n, prec);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DetApprox)->DenseRange(4, 12, 2);

static void BM_EngineCompute(benchmark::State& state) {
    const PolyMatrix m =
        bench_instance(7, static_cast<std::size_t>(state.range(0)), 2, 2, 9, 0);
    PipelineConfig cfg;
    for (auto _ : state) {
        PipelineReport r = compute_determinant(m, cfg);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_EngineCompute)->DenseRange(2, 9)->Unit(benchmark::kMillisecond);

static void BM_OracleBareiss(benchmark::State& state) {
    const PolyMatrix m =
        bench_instance(7, static_cast<std::size_t>(state.range(0)), 2, 2, 9, 0);
    for (auto _ : state) {
        Polynomial d = det_symbolic_bareiss(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_OracleBareiss)->DenseRange(2, 9)->Unit(benchmark::kMillisecond);

static void BM_EvaluateGrid(benchmark::State& state) {
    const PolyMatrix m = bench_instance(7, 6, 2, 2, 9, 0);
    std::vector<std::uint64_t> bounds = {12, 12};
    auto axes = make_axes(bounds, mpq_class(1, 2), mpq_class(1, 2));
    const unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        Tensor t = evaluate_grid(m, axes, 512, EvalMode::Approx, threads);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_EvaluateGrid)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
