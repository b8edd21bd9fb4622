#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symdet/degbound.hpp"
#include "symdet/kronmap.hpp"
#include "symdet/numdet.hpp"
#include "symdet/polynomial.hpp"
#include "symdet/vandersolve.hpp"

namespace symdet {

struct PipelineConfig {
    enum class Reduce { Auto, On, Off };

    mpq_class lambda = mpq_class(1, 2);
    std::optional<mpq_class> offset;            // default: lambda
    Reduce reduce = Reduce::Auto;               // Auto: on when v > 2
    int verify_nodes = 4;                       // K >= 1
    int max_escalations = 3;
    unsigned threads = 0;                       // 0: hardware concurrency
    EvalMode eval_mode = EvalMode::Approx;
    std::optional<mpfr_prec_t> precision_override;
    // Start from these per-variable bounds instead of the estimator's; the
    // escalation loop still guards and repairs them.
    std::optional<std::vector<std::uint64_t>> initial_bounds;
};

struct PipelineReport {
    Polynomial determinant;
    DegreeBoundReport degree_bounds;            // estimator output per variable
    std::vector<std::uint64_t> bounds_used;     // after overrides/escalation
    SubstitutionPlan plan;
    bool reduced = false;
    std::vector<std::uint64_t> solve_bounds;    // axis degree bounds of the solve
    mpq_class lambda;
    mpq_class epsilon;
    mpfr_prec_t precision_bits = 0;
    std::uint64_t node_count = 0;
    double max_residual = 0.0;
    bool verified = false;
    std::uint64_t escalations = 0;
    double ms_eval = 0.0;
    double ms_solve = 0.0;
    double ms_total = 0.0;
};

class nonconvergence_error : public error {
public:
    nonconvergence_error(const std::string& what, PipelineReport best)
        : error(what), best_(std::move(best)) {}
    const PipelineReport& best() const { return best_; }

private:
    PipelineReport best_;
};

// Determinant values of `reduced` at every grid point of `axes`, as a tensor
// indexed like the node grid. Cells are independent pure evaluations merged
// by index, so the tensor is bit-identical for every worker count.
Tensor evaluate_grid(const PolyMatrix& reduced, const std::vector<NodeAxis>& axes,
                     mpfr_prec_t precision, EvalMode mode, unsigned threads);

struct VerifyOutcome {
    bool ok = false;
    std::vector<mpq_class> witness_point;       // first mismatch, when !ok
    mpq_class candidate_value;
    mpq_class determinant_value;
};

// Exact-rational spot check of a candidate determinant at K dyadic points
// disjoint from the interpolation grid (multiples of lambda past the last
// node index).
VerifyOutcome verify_at_nodes(const Polynomial& candidate, const PolyMatrix& m, int k,
                              const mpq_class& lambda = mpq_class(1, 2),
                              const mpq_class& offset = mpq_class(1, 2),
                              std::uint64_t start_multiple = 1024);

// The full pipeline: degree bounds, optional Kronecker reduction, node grid,
// parallel numeric evaluation, tensor solve, nearest-integer recovery,
// lifting, exact verification, bound escalation on failure.
PipelineReport compute_determinant(const PolyMatrix& m, const PipelineConfig& cfg = {});

} // namespace symdet
