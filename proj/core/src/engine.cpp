#include "symdet/engine.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include "symdet/instancegen.hpp"
#include "symdet/parallel.hpp"

namespace symdet {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

unsigned effective_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void validate(const PipelineConfig& cfg) {
    if (cfg.verify_nodes < 1) throw config_error("verification node count must be at least 1");
    if (cfg.max_escalations < 0) throw config_error("escalation budget must be non-negative");
    if (cfg.lambda <= 0 || !is_dyadic(cfg.lambda))
        throw config_error("lambda must be a positive dyadic rational");
    if (cfg.offset && !is_dyadic(*cfg.offset))
        throw config_error("node offset must be a dyadic rational");
    if (cfg.precision_override && *cfg.precision_override < MPFR_PREC_MIN)
        throw config_error("precision override below the representable minimum");
}

// |det| over the whole grid is bounded by the Hadamard bound of the matrix
// of entry magnitude bounds at the largest node of each axis (nodes are
// positive, so entry magnitudes are monotone along every axis). Upward
// rounding throughout keeps it a true bound.
BigFloat grid_magnitude_bound(const PolyMatrix& reduced, const std::vector<NodeAxis>& axes) {
    const std::size_t v = reduced.vars().size();
    const mpfr_prec_t prec = 96;

    std::vector<std::vector<BigFloat>> corner_pows(v);
    for (std::size_t a = 0; a < v; ++a) {
        std::uint64_t dmax = 0;
        for (std::size_t e = 0; e < reduced.order() * reduced.order(); ++e)
            dmax = std::max(dmax, reduced.at(e / reduced.order(), e % reduced.order()).degree_in(a));
        // Largest node magnitude; the grid is monotone so it sits at an end.
        mpq_class corner_q = abs(axes[a].nodes.back());
        if (abs(axes[a].nodes.front()) > corner_q) corner_q = abs(axes[a].nodes.front());
        const BigFloat corner = BigFloat::from_mpq(corner_q, prec, MPFR_RNDU);
        corner_pows[a].push_back(BigFloat::from_si(1, prec));
        for (std::uint64_t e = 1; e <= dmax; ++e)
            corner_pows[a].push_back(BigFloat::mul(corner_pows[a].back(), corner, prec, MPFR_RNDU));
    }

    const std::size_t n = reduced.order();
    std::vector<BigFloat> bounds;
    bounds.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            BigFloat acc(prec);
            for (const auto& [mono, coeff] : reduced.at(i, j).terms()) {
                BigFloat t = BigFloat::from_mpz(abs(coeff), prec, MPFR_RNDU);
                for (std::size_t a = 0; a < v; ++a)
                    if (mono[a] > 0) t = BigFloat::mul(t, corner_pows[a][mono[a]], prec, MPFR_RNDU);
                acc = BigFloat::add(acc, t, prec, MPFR_RNDU);
            }
            bounds.push_back(std::move(acc));
        }
    }
    return hadamard_bound(bounds, n);
}

// Precision needed by the progressive solver itself:
// ceil(log2(1/eps)) + ceil(D * log2(max node + 2)) + 64 guard bits.
mpfr_prec_t solve_precision(const mpq_class& eps, const std::vector<NodeAxis>& axes) {
    std::uint64_t total_degree = 0;
    mpq_class max_node(0);
    for (const auto& ax : axes) {
        total_degree += ax.count() - 1;
        if (abs(ax.nodes.back()) > max_node) max_node = abs(ax.nodes.back());
        if (abs(ax.nodes.front()) > max_node) max_node = abs(ax.nodes.front());
    }
    mpfr_t t;
    mpfr_init2(t, 96);
    mpq_class inv_eps = 1 / eps;
    mpfr_set_q(t, inv_eps.get_mpq_t(), MPFR_RNDU);
    mpfr_log2(t, t, MPFR_RNDU);
    mpfr_ceil(t, t);
    long p = std::max(0L, mpfr_get_si(t, MPFR_RNDN));

    mpfr_set_q(t, max_node.get_mpq_t(), MPFR_RNDU);
    mpfr_add_ui(t, t, 2, MPFR_RNDU);
    mpfr_log2(t, t, MPFR_RNDU);
    mpfr_mul_ui(t, t, static_cast<unsigned long>(total_degree), MPFR_RNDU);
    mpfr_ceil(t, t);
    p += std::max(0L, mpfr_get_si(t, MPFR_RNDN)) + 64;
    mpfr_clear(t);
    return static_cast<mpfr_prec_t>(p);
}

std::vector<std::uint64_t> grow_bounds(std::vector<std::uint64_t> bounds) {
    for (auto& b : bounds) b += std::max<std::uint64_t>(1, (b + 3) / 4);
    return bounds;
}

} // namespace

namespace {

// Bivariate fast path: for each first-axis node the entries collapse to
// short polynomials in the second variable, so a whole line of cells shares
// one collapse. Terms and node powers are staged once.
void evaluate_grid_bivariate(const PolyMatrix& reduced, const std::vector<NodeAxis>& axes,
                             mpfr_prec_t precision, unsigned threads, Tensor& values) {
    const std::size_t n = reduced.order();
    const std::size_t count0 = axes[0].count();
    const std::size_t count1 = axes[1].count();

    struct EntryTerms {
        std::vector<std::uint64_t> e0, e1;
        std::vector<BigFloat> coeff;
    };
    std::vector<EntryTerms> entries(n * n);
    std::uint64_t d0max = 0, d1max = 0;
    for (std::size_t e = 0; e < n * n; ++e) {
        for (const auto& [mono, c] : reduced.at(e / n, e % n).terms()) {
            entries[e].e0.push_back(mono[0]);
            entries[e].e1.push_back(mono[1]);
            entries[e].coeff.push_back(BigFloat::from_mpz(c, precision));
            d0max = std::max(d0max, mono[0]);
            d1max = std::max(d1max, mono[1]);
        }
    }

    std::vector<std::vector<BigFloat>> pow1(count1);
    for (std::size_t j = 0; j < count1; ++j) {
        const BigFloat node = BigFloat::from_mpq(axes[1].nodes[j], precision);
        pow1[j].push_back(BigFloat::from_si(1, precision));
        for (std::uint64_t e = 1; e <= d1max; ++e) pow1[j].push_back(pow1[j].back() * node);
    }

    parallel_for(count0, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<BigFloat> pow0(d0max + 1, BigFloat(precision));
        std::vector<BigFloat> collapsed(n * n * (d1max + 1), BigFloat(precision));
        std::vector<BigFloat> cell(n * n, BigFloat(precision));
        BigFloat node(precision), tmp(precision);
        mpfr_set_ui(pow0[0].raw(), 1, MPFR_RNDN);
        for (std::size_t i = begin; i < end; ++i) {
            mpfr_set_q(node.raw(), axes[0].nodes[i].get_mpq_t(), MPFR_RNDN);
            for (std::uint64_t e = 1; e <= d0max; ++e)
                mpfr_mul(pow0[e].raw(), pow0[e - 1].raw(), node.raw(), MPFR_RNDN);

            for (std::size_t e = 0; e < n * n; ++e) {
                BigFloat* g = collapsed.data() + e * (d1max + 1);
                for (std::uint64_t k = 0; k <= d1max; ++k) mpfr_set_zero(g[k].raw(), 1);
                const auto& t = entries[e];
                for (std::size_t idx = 0; idx < t.coeff.size(); ++idx) {
                    mpfr_mul(tmp.raw(), t.coeff[idx].raw(), pow0[t.e0[idx]].raw(), MPFR_RNDN);
                    mpfr_add(g[t.e1[idx]].raw(), g[t.e1[idx]].raw(), tmp.raw(), MPFR_RNDN);
                }
            }
            for (std::size_t j = 0; j < count1; ++j) {
                for (std::size_t e = 0; e < n * n; ++e) {
                    const BigFloat* g = collapsed.data() + e * (d1max + 1);
                    mpfr_set(cell[e].raw(), g[0].raw(), MPFR_RNDN);
                    for (std::uint64_t k = 1; k <= d1max; ++k) {
                        mpfr_mul(tmp.raw(), g[k].raw(), pow1[j][k].raw(), MPFR_RNDN);
                        mpfr_add(cell[e].raw(), cell[e].raw(), tmp.raw(), MPFR_RNDN);
                    }
                }
                values[i * count1 + j] = det_approx(cell, n, precision);
            }
        }
    });
}

} // namespace

Tensor evaluate_grid(const PolyMatrix& reduced, const std::vector<NodeAxis>& axes,
                     mpfr_prec_t precision, EvalMode mode, unsigned threads) {
    if (axes.empty()) throw instance_error("grid evaluation needs at least one axis");
    if (axes.size() != reduced.vars().size())
        throw instance_error("axis count does not match matrix variables");

    std::vector<std::size_t> shape;
    shape.reserve(axes.size());
    for (const auto& ax : axes) shape.push_back(ax.count());
    Tensor values(shape, precision);

    const std::size_t n = reduced.order();
    const std::size_t v = axes.size();

    if (mode == EvalMode::Approx && v == 2) {
        evaluate_grid_bivariate(reduced, axes, precision, threads, values);
        return values;
    }

    parallel_for(values.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<mpq_class> point_q(v);
        std::vector<BigFloat> point_f(v, BigFloat(precision));
        std::vector<BigFloat> cell_f(n * n, BigFloat(precision));
        std::vector<mpq_class> cell_q(n * n);
        for (std::size_t flat = begin; flat < end; ++flat) {
            const auto multi = values.multi_index(flat);
            for (std::size_t a = 0; a < v; ++a) point_q[a] = axes[a].nodes[multi[a]];
            if (mode == EvalMode::Approx) {
                for (std::size_t a = 0; a < v; ++a)
                    point_f[a] = BigFloat::from_mpq(point_q[a], precision);
                for (std::size_t i = 0; i < n * n; ++i)
                    cell_f[i] = reduced.at(i / n, i % n).eval(point_f, precision);
                values[flat] = det_approx(cell_f, n, precision);
            } else {
                for (std::size_t i = 0; i < n * n; ++i)
                    cell_q[i] = reduced.at(i / n, i % n).eval_exact(point_q);
                values[flat] = BigFloat::from_mpq(det_exact_dyadic(cell_q, n), precision);
            }
        }
    });
    return values;
}

VerifyOutcome verify_at_nodes(const Polynomial& candidate, const PolyMatrix& m, int k,
                              const mpq_class& lambda, const mpq_class& offset,
                              std::uint64_t start_multiple) {
    if (k < 1) throw config_error("verification node count must be at least 1");
    const std::size_t v = m.vars().size();
    const std::size_t n = m.order();

    SplitMix64 rng(0x73796d6465743aULL ^ (static_cast<std::uint64_t>(v) << 32) ^ n);
    std::set<std::vector<std::uint64_t>> seen;
    VerifyOutcome out;
    out.ok = true;

    for (int check = 0; check < k; ++check) {
        std::vector<std::uint64_t> multiples(v);
        do {
            for (auto& mult : multiples) mult = start_multiple + rng.below(4096);
        } while (!seen.insert(multiples).second);

        std::vector<mpq_class> point(v);
        for (std::size_t a = 0; a < v; ++a)
            point[a] = offset + mpq_class(multiples[a]) * lambda;

        std::vector<mpq_class> cells(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = m.at(i, j).eval_exact(point);

        const mpq_class det = det_exact_dyadic(cells, n);
        const mpq_class cand = candidate.eval_exact(point);
        if (det != cand) {
            out.ok = false;
            out.witness_point = std::move(point);
            out.candidate_value = cand;
            out.determinant_value = det;
            return out;
        }
    }
    return out;
}

PipelineReport compute_determinant(const PolyMatrix& m, const PipelineConfig& cfg) {
    validate(cfg);
    const auto t_start = clock_type::now();
    const unsigned threads = effective_threads(cfg.threads);
    const mpq_class offset = cfg.offset.value_or(cfg.lambda);
    const std::size_t v = m.vars().size();
    if (v == 0) throw instance_error("instances must declare at least one variable");

    PipelineReport report;
    report.lambda = cfg.lambda;
    report.degree_bounds = estimate_all_degrees(m);

    std::vector<std::uint64_t> bounds = cfg.initial_bounds.value_or(report.degree_bounds.bounds());
    if (bounds.size() != v) throw config_error("initial bound count does not match variable set");

    const bool want_reduce =
        cfg.reduce == PipelineConfig::Reduce::On ||
        (cfg.reduce == PipelineConfig::Reduce::Auto && v > 2);

    for (std::uint64_t round = 0;; ++round) {
        report.escalations = round;
        report.bounds_used = bounds;

        SubstitutionPlan plan = make_plan(bounds, m.vars());
        const bool reducing = want_reduce && !plan.identity;
        PolyMatrix solved = reducing ? reduce_matrix(m, plan) : m;
        report.plan = plan;
        report.reduced = reducing;

        std::vector<std::uint64_t> axis_bounds;
        if (reducing) {
            const auto [eq_low, eq_high] = reduced_degree_bound(plan);
            const auto re_low = estimate_degree(solved, 0).bound;
            const auto re_high = estimate_degree(solved, 1).bound;
            axis_bounds = {std::min(eq_low, re_low), std::min(eq_high, re_high)};
        } else {
            axis_bounds = bounds;
        }
        report.solve_bounds = axis_bounds;

        const auto axes = make_axes(axis_bounds, cfg.lambda, offset);
        const mpq_class eps = error_budget(axis_bounds, cfg.lambda);
        report.epsilon = eps;

        mpfr_prec_t precision;
        if (cfg.precision_override) {
            precision = *cfg.precision_override;
        } else {
            const BigFloat magnitude = grid_magnitude_bound(solved, axes);
            precision = std::max(choose_precision(eps, magnitude, solved.order()),
                                 solve_precision(eps, axes));
        }
        report.precision_bits = precision;

        const auto t_eval = clock_type::now();
        Tensor grid = evaluate_grid(solved, axes, precision, cfg.eval_mode, threads);
        report.node_count = grid.size();
        report.ms_eval = ms_since(t_eval);

        const auto t_solve = clock_type::now();
        InterpolationJob job = make_job(axes, precision, std::move(grid));
        Tensor coeffs = tensor_solve(job, threads);
        RoundedTensor rounded = round_to_integers(coeffs, threads);
        report.ms_solve = ms_since(t_solve);
        report.max_residual = rounded.max_residual;

        bool ok = rounded.safe;
        if (ok) {
            // Lift the integer tensor back to the original variables.
            Polynomial candidate(m.vars());
            for (std::size_t flat = 0; flat < rounded.coefficients.size(); ++flat) {
                const mpz_class& c = rounded.coefficients[flat];
                if (c == 0) continue;
                const auto multi = coeffs.multi_index(flat);
                std::vector<std::uint64_t> exps;
                if (reducing) {
                    exps = lift_monomial(multi[0], multi.size() > 1 ? multi[1] : 0, plan);
                } else {
                    exps.assign(multi.begin(), multi.end());
                }
                candidate.add_term(Monomial(std::move(exps)), c);
            }

            const std::size_t max_count =
                std::max_element(axes.begin(), axes.end(), [](const auto& a, const auto& b) {
                    return a.count() < b.count();
                })->count();
            const auto outcome = verify_at_nodes(candidate, m, cfg.verify_nodes, cfg.lambda,
                                                 offset, max_count + 1);
            if (outcome.ok) {
                report.determinant = std::move(candidate);
                report.verified = true;
                report.ms_total = ms_since(t_start);
                return report;
            }
            report.determinant = std::move(candidate);
            ok = false;
        }

        if (!ok) {
            if (round >= static_cast<std::uint64_t>(cfg.max_escalations)) {
                report.verified = false;
                report.ms_total = ms_since(t_start);
                throw nonconvergence_error(
                    "escalation budget exhausted: degree bounds or precision insufficient",
                    std::move(report));
            }
            bounds = grow_bounds(std::move(bounds));
        }
    }
}

} // namespace symdet
