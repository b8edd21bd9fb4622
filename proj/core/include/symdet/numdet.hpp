#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symdet/bigfloat.hpp"

namespace symdet {

enum class EvalMode { Approx, ExactDyadic };

// Determinant by elimination with partial pivoting at precision P.
// A zero determinant is a legal value, not an error; an exactly zero pivot
// column yields exactly 0. The matrix is row-major, order n.
BigFloat det_approx(std::vector<BigFloat> matrix, std::size_t n, mpfr_prec_t precision);

// Exact determinant by fraction-free (Bareiss) elimination over rationals.
mpq_class det_exact_dyadic(std::vector<mpq_class> matrix, std::size_t n);

// Product of row 2-norms: an upper bound on |det|, rounded upward.
BigFloat hadamard_bound(std::span<const BigFloat> matrix, std::size_t n);

// Working precision for evaluating determinants to absolute accuracy eps:
// P = ceil(log2(1/eps)) + ceil(log2(bound + 2)) + ceil(3 log2(n + 1)) + 32.
mpfr_prec_t choose_precision(const mpq_class& eps, const BigFloat& magnitude_bound, std::size_t n);

} // namespace symdet
