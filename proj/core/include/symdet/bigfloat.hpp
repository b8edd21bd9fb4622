#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace symdet {

// Radix-2 floating point value with an explicit mantissa precision.
// Every operation rounds to nearest-even; binary operators carry the wider
// precision of their operands. Precision is per-value state, never global.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) {
        mpfr_init2(value_, clamp(prec));
        mpfr_set_zero(value_, 1);
    }

    BigFloat(const BigFloat& other) {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(value_, MPFR_PREC_MIN);
        mpfr_swap(value_, other.value_);
    }

    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& other) noexcept {
        if (this != &other) mpfr_swap(value_, other.value_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(value_); }

    static BigFloat from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static BigFloat from_mpz(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static BigFloat from_si(long v, mpfr_prec_t prec);
    static BigFloat from_double(double v, mpfr_prec_t prec);
    static BigFloat from_string(const std::string& decimal, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sgn() const { return mpfr_sgn(value_); }

    int cmp(const BigFloat& other) const { return mpfr_cmp(value_, other.value_); }
    int cmpabs(const BigFloat& other) const { return mpfr_cmpabs(value_, other.value_); }

    bool operator==(const BigFloat& o) const { return cmp(o) == 0; }
    bool operator!=(const BigFloat& o) const { return cmp(o) != 0; }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }

    BigFloat abs() const {
        BigFloat r(precision());
        mpfr_abs(r.value_, value_, MPFR_RNDN);
        return r;
    }

    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.value_, value_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, wider(a, b), MPFR_RNDN); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, wider(a, b), MPFR_RNDN); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, wider(a, b), MPFR_RNDN); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, wider(a, b), MPFR_RNDN); }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(value_, value_, o.value_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(value_, value_, o.value_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(value_, value_, o.value_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(value_, value_, o.value_, MPFR_RNDN); return *this; }

    // Directed-rounding variants for bound arithmetic.
    static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat sqrt(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd);

    BigFloat pow_ui(unsigned long e) const {
        BigFloat r(precision());
        mpfr_pow_ui(r.value_, value_, e, MPFR_RNDN);
        return r;
    }

    BigFloat rounded_to(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) const {
        BigFloat r(prec);
        mpfr_set(r.value_, value_, rnd);
        return r;
    }

    // Nearest integer (ties to even); the recovery step of the pipeline.
    mpz_class round_to_integer() const;

    // Exact rational value of the float; never rounds.
    mpq_class to_mpq() const;

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    // Scientific decimal with the given number of significant digits.
    std::string str(int significant_digits = 17) const;

    mpfr_srcptr raw() const { return value_; }
    mpfr_ptr raw() { return value_; }

private:
    static mpfr_prec_t clamp(mpfr_prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }
    static mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
        return a.precision() > b.precision() ? a.precision() : b.precision();
    }

    mpfr_t value_;
};

} // namespace symdet
