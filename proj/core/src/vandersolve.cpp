#include "symdet/vandersolve.hpp"

#include <algorithm>
#include <mutex>

#include "symdet/errors.hpp"
#include "symdet/parallel.hpp"

namespace symdet {

bool is_dyadic(const mpq_class& q) {
    return mpz_popcount(mpq_denref(q.get_mpq_t())) == 1;
}

std::vector<NodeAxis> make_axes(std::span<const std::uint64_t> degree_bounds,
                                const mpq_class& lambda, const mpq_class& offset) {
    if (lambda <= 0) throw instance_error("node spacing must be positive");
    if (!is_dyadic(lambda)) throw instance_error("node spacing must be a dyadic rational");
    if (!is_dyadic(offset)) throw instance_error("node offset must be a dyadic rational");
    std::vector<NodeAxis> axes;
    axes.reserve(degree_bounds.size());
    for (const std::uint64_t d : degree_bounds) {
        NodeAxis axis;
        axis.gap = lambda;
        axis.nodes.reserve(d + 1);
        mpq_class node = offset;
        for (std::uint64_t k = 0; k <= d; ++k) {
            axis.nodes.push_back(node);
            node += lambda;
        }
        axes.push_back(std::move(axis));
    }
    return axes;
}

mpq_class error_budget(std::span<const std::uint64_t> degree_bounds, const mpq_class& lambda) {
    if (lambda <= 0) throw instance_error("node spacing must be positive");
    std::uint64_t total = 0;
    for (const auto d : degree_bounds) total += d;
    if (total > 1000000) throw instance_error("degree bounds too large for an error budget");
    mpq_class half_gap = lambda / 2;
    mpq_class eps;
    mpz_pow_ui(mpq_numref(eps.get_mpq_t()), mpq_numref(half_gap.get_mpq_t()),
               static_cast<unsigned long>(total));
    mpz_pow_ui(mpq_denref(eps.get_mpq_t()), mpq_denref(half_gap.get_mpq_t()),
               static_cast<unsigned long>(total));
    eps /= 2;
    return eps;
}

void bp_solve_inplace(std::span<const BigFloat> nodes, std::span<BigFloat> values) {
    const std::size_t count = nodes.size();
    if (values.size() != count) throw instance_error("node/value count mismatch");
    if (count == 0) return;
    const std::size_t d = count - 1;
    const mpfr_prec_t prec = values[0].precision();
    BigFloat denom(prec), tmp(prec);

    // Divided differences: c_i <- (c_i - c_{i-1}) / (x_i - x_{i-k-1}).
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = d; i >= k + 1; --i) {
            mpfr_sub(denom.raw(), nodes[i].raw(), nodes[i - k - 1].raw(), MPFR_RNDN);
            if (denom.is_zero()) throw singularity_error("duplicate interpolation nodes");
            mpfr_sub(values[i].raw(), values[i].raw(), values[i - 1].raw(), MPFR_RNDN);
            mpfr_div(values[i].raw(), values[i].raw(), denom.raw(), MPFR_RNDN);
        }
    }
    // Newton-to-monomial back substitution: a_i <- a_i - x_k * a_{i+1}.
    for (std::size_t k = d; k-- > 0;) {
        for (std::size_t i = k; i <= d - 1; ++i) {
            mpfr_mul(tmp.raw(), nodes[k].raw(), values[i + 1].raw(), MPFR_RNDN);
            mpfr_sub(values[i].raw(), values[i].raw(), tmp.raw(), MPFR_RNDN);
        }
    }
}

std::vector<BigFloat> bp_solve(std::span<const BigFloat> nodes, std::span<const BigFloat> values) {
    std::vector<BigFloat> work(values.begin(), values.end());
    bp_solve_inplace(nodes, work);
    return work;
}

Tensor::Tensor(std::vector<std::size_t> shape, mpfr_prec_t prec) : shape_(std::move(shape)) {
    std::size_t total = 1;
    for (const auto s : shape_) total *= s;
    strides_.assign(shape_.size(), 1);
    for (std::size_t a = shape_.size(); a-- > 1;) strides_[a - 1] = strides_[a] * shape_[a];
    cells_.assign(total, BigFloat(prec));
}

std::size_t Tensor::flat_index(std::span<const std::size_t> multi) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) flat += multi[a] * strides_[a];
    return flat;
}

std::vector<std::size_t> Tensor::multi_index(std::size_t flat) const {
    std::vector<std::size_t> multi(shape_.size());
    for (std::size_t a = 0; a < shape_.size(); ++a) {
        multi[a] = flat / strides_[a];
        flat %= strides_[a];
    }
    return multi;
}

std::size_t Tensor::line_base(std::size_t axis, std::size_t line_idx) const {
    // Mixed-radix decode of line_idx over all axes except `axis`.
    std::size_t base = 0;
    for (std::size_t a = shape_.size(); a-- > 0;) {
        if (a == axis) continue;
        base += (line_idx % shape_[a]) * strides_[a];
        line_idx /= shape_[a];
    }
    return base;
}

InterpolationJob make_job(std::vector<NodeAxis> axes, mpfr_prec_t precision, Tensor values) {
    if (axes.empty()) throw instance_error("interpolation job needs at least one axis");
    InterpolationJob job;
    std::vector<std::uint64_t> bounds;
    mpq_class min_gap;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        bounds.push_back(axes[a].count() - 1);
        if (a == 0 || axes[a].gap < min_gap) min_gap = axes[a].gap;
        if (values.shape()[a] != axes[a].count())
            throw instance_error("value tensor shape does not match axes");
    }
    job.epsilon = error_budget(bounds, min_gap);
    job.precision = precision;
    job.axes = std::move(axes);
    job.values = std::move(values);
    return job;
}

namespace {

bool equispaced(const NodeAxis& ax) {
    for (std::size_t i = 1; i < ax.nodes.size(); ++i)
        if (ax.nodes[i] - ax.nodes[i - 1] != ax.gap) return false;
    return true;
}

// For a uniform grid the divided differences are finite differences with a
// deferred per-coefficient scale 1/(k! gap^k): the first pass needs only
// subtractions.
void bp_solve_uniform(std::span<const BigFloat> nodes, std::span<const BigFloat> scales,
                      std::span<BigFloat> values) {
    const std::size_t d = nodes.size() - 1;
    if (d == 0) return;
    BigFloat tmp(values[0].precision());
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = d; i >= k + 1; --i)
            mpfr_sub(values[i].raw(), values[i].raw(), values[i - 1].raw(), MPFR_RNDN);
    for (std::size_t i = 1; i <= d; ++i)
        mpfr_mul(values[i].raw(), values[i].raw(), scales[i].raw(), MPFR_RNDN);
    for (std::size_t k = d; k-- > 0;) {
        for (std::size_t i = k; i <= d - 1; ++i) {
            mpfr_mul(tmp.raw(), nodes[k].raw(), values[i + 1].raw(), MPFR_RNDN);
            mpfr_sub(values[i].raw(), values[i].raw(), tmp.raw(), MPFR_RNDN);
        }
    }
}

} // namespace

Tensor tensor_solve(const InterpolationJob& job, unsigned threads) {
    Tensor out = job.values;
    for (std::size_t axis = 0; axis < job.axes.size(); ++axis) {
        const auto& ax = job.axes[axis];
        std::vector<BigFloat> nodes;
        nodes.reserve(ax.count());
        for (const auto& q : ax.nodes) nodes.push_back(BigFloat::from_mpq(q, job.precision));

        const bool uniform = equispaced(ax);
        std::vector<BigFloat> scales;
        if (uniform) {
            scales.reserve(ax.count());
            mpq_class denom(1);   // k! * gap^k
            scales.push_back(BigFloat::from_si(1, job.precision));
            for (std::size_t k = 1; k < ax.count(); ++k) {
                denom *= mpq_class(static_cast<unsigned long>(k)) * ax.gap;
                scales.push_back(BigFloat::from_mpq(1 / denom, job.precision));
            }
        }

        const std::size_t lines = out.line_count(axis);
        const std::size_t stride = out.stride(axis);
        const std::size_t len = ax.count();
        parallel_for(lines, threads, [&](std::size_t begin, std::size_t end) {
            std::vector<BigFloat> line(len, BigFloat(job.precision));
            for (std::size_t l = begin; l < end; ++l) {
                const std::size_t base = out.line_base(axis, l);
                for (std::size_t k = 0; k < len; ++k) line[k] = out[base + k * stride];
                if (uniform) {
                    bp_solve_uniform(nodes, scales, line);
                } else {
                    bp_solve_inplace(nodes, line);
                }
                for (std::size_t k = 0; k < len; ++k) out[base + k * stride] = line[k];
            }
        });
    }
    return out;
}

RoundedTensor round_to_integers(const Tensor& coefficients, unsigned threads) {
    RoundedTensor r;
    r.shape = coefficients.shape();
    r.coefficients.assign(coefficients.size(), mpz_class(0));
    const unsigned workers = std::max(1u, threads);
    std::mutex guard;
    double global_max = 0.0;
    parallel_for(coefficients.size(), workers, [&](std::size_t begin, std::size_t end) {
        double local_max = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const BigFloat& x = coefficients[i];
            mpz_class z = x.round_to_integer();
            // |x - z| computed at small precision; the exact difference is tiny.
            BigFloat zf = BigFloat::from_mpz(z, std::max<mpfr_prec_t>(64, x.precision()));
            const double residual = BigFloat::sub(x, zf, 64, MPFR_RNDN).abs().to_double();
            local_max = std::max(local_max, residual);
            r.coefficients[i] = std::move(z);
        }
        std::lock_guard<std::mutex> lock(guard);
        global_max = std::max(global_max, local_max);
    });
    r.max_residual = global_max;
    r.safe = r.max_residual < 0.25;
    return r;
}

} // namespace symdet
