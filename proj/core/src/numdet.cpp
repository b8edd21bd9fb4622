#include "symdet/numdet.hpp"

#include <algorithm>

#include "symdet/errors.hpp"

namespace symdet {

BigFloat det_approx(std::vector<BigFloat> a, std::size_t n, mpfr_prec_t precision) {
    if (n == 0) throw instance_error("matrix order must be at least 1");
    if (a.size() != n * n) throw instance_error("matrix storage does not match order");
    for (auto& x : a)
        if (x.precision() != precision) x = x.rounded_to(precision);

    int sign = 1;
    BigFloat det = BigFloat::from_si(1, precision);
    BigFloat pivot_recip(precision), factor(precision), tmp(precision);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (a[i * n + k].cmpabs(a[pivot_row * n + k]) > 0) pivot_row = i;
        if (a[pivot_row * n + k].is_zero()) return BigFloat(precision);
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot_row * n + j]);
            sign = -sign;
        }
        const BigFloat& pivot = a[k * n + k];
        mpfr_ui_div(pivot_recip.raw(), 1, pivot.raw(), MPFR_RNDN);
        for (std::size_t i = k + 1; i < n; ++i) {
            mpfr_mul(factor.raw(), a[i * n + k].raw(), pivot_recip.raw(), MPFR_RNDN);
            if (factor.is_zero()) continue;
            for (std::size_t j = k + 1; j < n; ++j) {
                mpfr_mul(tmp.raw(), factor.raw(), a[k * n + j].raw(), MPFR_RNDN);
                mpfr_sub(a[i * n + j].raw(), a[i * n + j].raw(), tmp.raw(), MPFR_RNDN);
            }
        }
        det *= pivot;
    }
    return sign < 0 ? -det : det;
}

mpq_class det_exact_dyadic(std::vector<mpq_class> a, std::size_t n) {
    if (n == 0) throw instance_error("matrix order must be at least 1");
    if (a.size() != n * n) throw instance_error("matrix storage does not match order");

    int sign = 1;
    mpq_class prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r * n + k] == 0) ++r;
            if (r == n) return mpq_class(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
            sign = -sign;
        }
        const mpq_class pivot = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = (pivot * a[i * n + j] - a[i * n + k] * a[k * n + j]) / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    mpq_class det = a[(n - 1) * n + (n - 1)];
    return sign < 0 ? mpq_class(-det) : det;
}

BigFloat hadamard_bound(std::span<const BigFloat> matrix, std::size_t n) {
    mpfr_prec_t prec = 96;
    for (const auto& x : matrix) prec = std::max(prec, x.precision());
    BigFloat bound = BigFloat::from_si(1, prec);
    for (std::size_t i = 0; i < n; ++i) {
        BigFloat norm_sq(prec);
        for (std::size_t j = 0; j < n; ++j) {
            const BigFloat& x = matrix[i * n + j];
            norm_sq = BigFloat::add(norm_sq, BigFloat::mul(x, x, prec, MPFR_RNDU), prec, MPFR_RNDU);
        }
        bound = BigFloat::mul(bound, BigFloat::sqrt(norm_sq, prec, MPFR_RNDU), prec, MPFR_RNDU);
    }
    return bound;
}

mpfr_prec_t choose_precision(const mpq_class& eps, const BigFloat& magnitude_bound, std::size_t n) {
    if (eps <= 0) throw instance_error("error budget must be positive");

    mpfr_t t;
    mpfr_init2(t, 96);

    mpq_class inv_eps = 1 / eps;
    mpfr_set_q(t, inv_eps.get_mpq_t(), MPFR_RNDU);
    mpfr_log2(t, t, MPFR_RNDU);
    mpfr_ceil(t, t);
    const long term_eps = std::max(0L, mpfr_get_si(t, MPFR_RNDN));

    mpfr_add_ui(t, magnitude_bound.raw(), 2, MPFR_RNDU);
    mpfr_log2(t, t, MPFR_RNDU);
    mpfr_ceil(t, t);
    const long term_mag = std::max(0L, mpfr_get_si(t, MPFR_RNDN));

    mpfr_set_ui(t, static_cast<unsigned long>(n) + 1, MPFR_RNDU);
    mpfr_log2(t, t, MPFR_RNDU);
    mpfr_mul_ui(t, t, 3, MPFR_RNDU);
    mpfr_ceil(t, t);
    const long term_dim = mpfr_get_si(t, MPFR_RNDN);

    mpfr_clear(t);

    const long p = term_eps + term_mag + term_dim + 32;
    return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(p));
}

} // namespace symdet
