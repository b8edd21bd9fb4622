// symdet: compute exact determinants of polynomial matrices by approximate
// interpolation, report degree bounds, and run the randomized benchmark
// protocol. Exit codes: 0 success, 1 usage/configuration/I-O error,
// 2 nonconvergence or cross-strategy mismatch.

#include <gmp.h>
#include <malloc.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symdet/engine.hpp"
#include "symdet/exprio.hpp"
#include "symdet/instancegen.hpp"
#include "symdet/oracle.hpp"
#include "symdet/report_io.hpp"

namespace allocstats {

std::atomic<std::uint64_t> current{0};
std::atomic<std::uint64_t> window_peak{0};

inline void on_alloc(std::size_t n) {
    const std::uint64_t cur = current.fetch_add(n, std::memory_order_relaxed) + n;
    std::uint64_t peak = window_peak.load(std::memory_order_relaxed);
    while (cur > peak &&
           !window_peak.compare_exchange_weak(peak, cur, std::memory_order_relaxed)) {
    }
}

inline void on_free(std::size_t n) { current.fetch_sub(n, std::memory_order_relaxed); }

void* gmp_alloc(std::size_t n) {
    on_alloc(n);
    return std::malloc(n);
}
void* gmp_realloc(void* p, std::size_t old_n, std::size_t new_n) {
    on_free(old_n);
    on_alloc(new_n);
    return std::realloc(p, new_n);
}
void gmp_free(void* p, std::size_t n) {
    on_free(n);
    std::free(p);
}

void install_gmp_hooks() { mp_set_memory_functions(gmp_alloc, gmp_realloc, gmp_free); }

std::uint64_t begin_window() {
    const std::uint64_t cur = current.load(std::memory_order_relaxed);
    window_peak.store(cur, std::memory_order_relaxed);
    return cur;
}

std::uint64_t end_window(std::uint64_t baseline) {
    const std::uint64_t peak = window_peak.load(std::memory_order_relaxed);
    return peak > baseline ? peak - baseline : 0;
}

} // namespace allocstats

// Route the C++ heap through the same counter; glibc's usable-size keeps the
// bookkeeping exact without per-block headers.
void* operator new(std::size_t n) {
    void* p = std::malloc(n ? n : 1);
    if (!p) throw std::bad_alloc();
    allocstats::on_alloc(malloc_usable_size(p));
    return p;
}
void* operator new[](std::size_t n) { return ::operator new(n); }
void operator delete(void* p) noexcept {
    if (!p) return;
    allocstats::on_free(malloc_usable_size(p));
    std::free(p);
}
void operator delete[](void* p) noexcept { ::operator delete(p); }
void operator delete(void* p, std::size_t) noexcept { ::operator delete(p); }
void operator delete[](void* p, std::size_t) noexcept { ::operator delete(p); }

namespace {

using namespace symdet;

mpq_class parse_rational(const std::string& text) {
    try {
        if (text.find('/') != std::string::npos) {
            mpq_class q(text);
            q.canonicalize();
            return q;
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) return mpq_class(mpz_class(text));
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.empty()) return mpq_class(mpz_class(whole.empty() ? "0" : whole));
        const bool negative = !whole.empty() && whole[0] == '-';
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole.empty() || whole == "-" ? "0" : whole) + frac);
        mpq_class q(digits, scale);
        q.canonicalize();
        if (negative && q > 0) q = -q;
        return q;
    } catch (const std::invalid_argument&) {
        throw config_error("cannot parse '" + text + "' as a rational number");
    }
}

unsigned thread_budget(std::optional<unsigned> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SYMDET_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') return static_cast<unsigned>(v);
    }
    return 0;   // engine resolves to hardware concurrency
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct ComputeArgs {
    std::string input;
    std::string output;
    std::string lambda = "0.5";
    std::optional<std::string> offset;
    bool no_reduce = false;
    std::optional<unsigned> threads;
    int verify = 4;
    std::optional<long> precision_bits;
    std::string mode = "approx";
    bool stats = false;
};

int run_compute(const ComputeArgs& args) {
    const InstanceFile file = load_instance_file(args.input);
    const PolyMatrix m = file.to_matrix();

    ResultFile result;
    if (args.mode == "exact-symbolic") {
        const auto t0 = std::chrono::steady_clock::now();
        const Polynomial det = det_symbolic_bareiss(m);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        ResultDiagnostics d;
        d.bounds = estimate_all_degrees(m).bounds();
        d.lambda = parse_rational(args.lambda).get_d();
        d.epsilon = "0";
        d.verified = true;
        d.ms_eval = ms;
        result = ResultFile::from_polynomial(det, std::move(d));
    } else {
        PipelineConfig cfg;
        cfg.lambda = parse_rational(args.lambda);
        if (args.offset) cfg.offset = parse_rational(*args.offset);
        if (args.no_reduce) cfg.reduce = PipelineConfig::Reduce::Off;
        cfg.threads = thread_budget(args.threads);
        cfg.verify_nodes = args.verify;
        if (args.precision_bits) cfg.precision_override = static_cast<mpfr_prec_t>(*args.precision_bits);
        if (args.mode == "exact") {
            cfg.eval_mode = EvalMode::ExactDyadic;
        } else if (args.mode != "approx") {
            throw config_error("unknown mode '" + args.mode + "'");
        }

        try {
            result = report_to_result(compute_determinant(m, cfg));
        } catch (const nonconvergence_error& e) {
            std::cerr << "symdet: " << e.what() << "\n";
            result = report_to_result(e.best());
            if (!args.output.empty()) write_result(args.output, result);
            if (args.stats) std::cerr << result_to_json(result);
            return 2;
        }
    }

    if (!args.output.empty()) {
        write_result(args.output, result);
    } else {
        std::cout << result_to_json(result);
    }
    if (args.stats) {
        std::cerr << "bounds:";
        for (auto b : result.diagnostics.bounds) std::cerr << " " << b;
        std::cerr << "\nepsilon: " << result.diagnostics.epsilon
                  << "\nprecision_bits: " << result.diagnostics.precision_bits
                  << "\nnodes: " << result.diagnostics.nodes
                  << "\nescalations: " << result.diagnostics.escalations
                  << "\nms_eval: " << fixed3(result.diagnostics.ms_eval)
                  << "\nms_solve: " << fixed3(result.diagnostics.ms_solve) << "\n";
    }
    return 0;
}

int run_degree(const std::string& input) {
    const InstanceFile file = load_instance_file(input);
    const PolyMatrix m = file.to_matrix();
    const auto report = estimate_all_degrees(m);
    std::string out = "{";
    for (std::size_t i = 0; i < m.vars().size(); ++i) {
        if (i) out += ", ";
        out += "\"" + m.vars().name(i) + "\": " + std::to_string(report.per_var[i].bound);
    }
    out += "}";
    std::cout << out << "\n";
    return 0;
}

struct BenchArgs {
    std::size_t min_order = 2;
    std::size_t max_order = 6;
    std::size_t vars = 2;
    std::uint64_t degree = 2;
    std::int64_t coeff = 9;
    std::uint64_t trials = 1;
    std::uint64_t seed = 42;
    std::vector<std::string> strategies = {"approx-interp", "exact-symbolic-bareiss"};
    std::optional<unsigned> threads;
    std::string output;
    std::string lambda = "0.5";
};

int run_bench(const BenchArgs& args) {
    if (args.trials < 1) throw config_error("trials must be at least 1");
    if (args.min_order < 1 || args.min_order > args.max_order)
        throw config_error("invalid order range");
    if (args.vars < 1) throw config_error("vars must be at least 1");
    for (const auto& s : args.strategies)
        if (s != "approx-interp" && s != "exact-symbolic-bareiss" && s != "cofactor")
            throw config_error("unknown strategy '" + s + "'");
    const bool wants_cofactor =
        std::find(args.strategies.begin(), args.strategies.end(), "cofactor") !=
        args.strategies.end();
    if (wants_cofactor && args.max_order > 8)
        throw config_error("cofactor strategy is capped at order 8");

    std::ostringstream csv;
    csv << "order,strategy,trial,wall_ms,peak_alloc_bytes,verified\n";

    PipelineConfig cfg;
    cfg.lambda = parse_rational(args.lambda);
    cfg.threads = thread_budget(args.threads);

    bool all_agree = true;
    for (std::size_t order = args.min_order; order <= args.max_order; ++order) {
        for (std::uint64_t trial = 0; trial < args.trials; ++trial) {
            const PolyMatrix m =
                bench_instance(args.seed, order, args.vars, args.degree, args.coeff, trial);
            std::optional<Polynomial> reference;
            for (const auto& strategy : args.strategies) {
                const std::uint64_t baseline = allocstats::begin_window();
                const auto t0 = std::chrono::steady_clock::now();
                Polynomial det(m.vars());
                bool engine_verified = true;
                if (strategy == "approx-interp") {
                    try {
                        auto report = compute_determinant(m, cfg);
                        det = std::move(report.determinant);
                        engine_verified = report.verified;
                    } catch (const nonconvergence_error& e) {
                        det = e.best().determinant;
                        engine_verified = false;
                    }
                } else if (strategy == "exact-symbolic-bareiss") {
                    det = det_symbolic_bareiss(m);
                } else {
                    det = det_symbolic_cofactor(m);
                }
                const double wall =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              t0)
                        .count();
                const std::uint64_t peak = allocstats::end_window(baseline);

                if (!reference) reference = det;
                const bool verified = engine_verified && det == *reference;
                if (!verified) all_agree = false;
                csv << order << "," << strategy << "," << trial << "," << fixed3(wall) << ","
                    << peak << "," << (verified ? 1 : 0) << "\n";
            }
        }
    }

    if (!args.output.empty()) {
        std::ofstream out(args.output, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open '" + args.output + "' for writing");
        out << csv.str();
    } else {
        std::cout << csv.str();
    }
    if (!all_agree) {
        std::cerr << "symdet: strategies disagreed on at least one trial\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    allocstats::install_gmp_hooks();

    CLI::App app{"exact symbolic determinants via error-controlled approximate interpolation"};
    app.require_subcommand(1);

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "compute the determinant of an instance file");
    c->add_option("--input", compute.input, "instance JSON path")->required();
    c->add_option("--output", compute.output, "result JSON path (default: stdout)");
    c->add_option("--lambda", compute.lambda, "node spacing (positive dyadic rational)");
    c->add_option("--offset", compute.offset, "first node (dyadic rational, default: lambda)");
    c->add_flag("--no-reduce", compute.no_reduce, "skip Kronecker dimension reduction");
    c->add_option("--threads", compute.threads, "worker threads (default: SYMDET_THREADS or all cores)");
    c->add_option("--verify", compute.verify, "verification node count, >= 1")
        ->check(CLI::Range(1, 1 << 20));
    c->add_option("--precision-bits", compute.precision_bits, "override working precision");
    c->add_option("--mode", compute.mode, "approx | exact | exact-symbolic")
        ->check(CLI::IsMember({"approx", "exact", "exact-symbolic"}));
    c->add_flag("--stats", compute.stats, "print diagnostics to stderr");

    std::string degree_input;
    auto* d = app.add_subcommand("degree", "report per-variable determinant degree bounds");
    d->add_option("--input", degree_input, "instance JSON path")->required();

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "run the randomized benchmark protocol (CSV)");
    b->add_option("--min-order", bench.min_order, "smallest matrix order");
    b->add_option("--max-order", bench.max_order, "largest matrix order");
    b->add_option("--vars", bench.vars, "variable count");
    b->add_option("--degree", bench.degree, "max per-variable entry degree");
    b->add_option("--coeff", bench.coeff, "coefficient magnitude bound");
    b->add_option("--trials", bench.trials, "trials per order");
    b->add_option("--seed", bench.seed, "instance stream seed");
    b->add_option("--strategies", bench.strategies,
                  "subset of approx-interp,exact-symbolic-bareiss,cofactor")
        ->delimiter(',');
    b->add_option("--threads", bench.threads, "worker threads for approx-interp");
    b->add_option("--output", bench.output, "CSV path (default: stdout)");
    b->add_option("--lambda", bench.lambda, "node spacing for approx-interp");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help
        std::cerr << "symdet: " << e.what() << "\n";
        return 1;
    }

    try {
        if (c->parsed()) return run_compute(compute);
        if (d->parsed()) return run_degree(degree_input);
        if (b->parsed()) return run_bench(bench);
    } catch (const nonconvergence_error& e) {
        std::cerr << "symdet: " << e.what() << "\n";
        return 2;
    } catch (const symdet::error& e) {
        std::cerr << "symdet: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "symdet: internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
