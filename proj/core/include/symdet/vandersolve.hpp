#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symdet/bigfloat.hpp"
#include "symdet/polynomial.hpp"

namespace symdet {

// Strictly increasing dyadic interpolation nodes for one variable;
// count = degree bound + 1, gap = the (uniform) spacing.
struct NodeAxis {
    std::vector<mpq_class> nodes;
    mpq_class gap;

    std::size_t count() const { return nodes.size(); }
};

bool is_dyadic(const mpq_class& q);

// Equispaced nodes: node_k = offset + k * lambda, k = 0..d.
std::vector<NodeAxis> make_axes(std::span<const std::uint64_t> degree_bounds,
                                const mpq_class& lambda, const mpq_class& offset);

// epsilon = 0.5 * (lambda/2)^(sum of degree bounds); value errors below this
// keep every recovered coefficient within 0.5 of the true integer.
mpq_class error_budget(std::span<const std::uint64_t> degree_bounds, const mpq_class& lambda);

// Progressive Vandermonde solve (divided differences + Newton-to-monomial
// back substitution), O(d^2) operations. Values are consumed in place.
void bp_solve_inplace(std::span<const BigFloat> nodes, std::span<BigFloat> values);
std::vector<BigFloat> bp_solve(std::span<const BigFloat> nodes, std::span<const BigFloat> values);

// Dense tensor of BigFloat, row-major, one axis per active variable.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::vector<std::size_t> shape, mpfr_prec_t prec);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return cells_.size(); }
    std::size_t stride(std::size_t axis) const { return strides_[axis]; }

    BigFloat& operator[](std::size_t flat) { return cells_[flat]; }
    const BigFloat& operator[](std::size_t flat) const { return cells_[flat]; }

    std::size_t flat_index(std::span<const std::size_t> multi) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;

    // Base offset of the line_idx-th 1-D line along `axis`; its elements sit
    // at base + k * stride(axis).
    std::size_t line_count(std::size_t axis) const { return size() / shape_[axis]; }
    std::size_t line_base(std::size_t axis, std::size_t line_idx) const;

private:
    std::vector<std::size_t> shape_;
    std::vector<std::size_t> strides_;
    std::vector<BigFloat> cells_;
};

struct InterpolationJob {
    std::vector<NodeAxis> axes;
    mpq_class epsilon;
    mpfr_prec_t precision = 64;
    Tensor values;
};

InterpolationJob make_job(std::vector<NodeAxis> axes, mpfr_prec_t precision, Tensor values);

// Solves the Kronecker-product Vandermonde system by running bp_solve along
// every tensor axis in turn. Lines of one axis are independent and may run on
// several workers; the result does not depend on the schedule.
Tensor tensor_solve(const InterpolationJob& job, unsigned threads = 1);

struct RoundedTensor {
    std::vector<std::size_t> shape;
    std::vector<mpz_class> coefficients;
    double max_residual = 0.0;
    bool safe = true;   // false once any residual reaches 0.25
};

RoundedTensor round_to_integers(const Tensor& coefficients, unsigned threads = 1);

} // namespace symdet
