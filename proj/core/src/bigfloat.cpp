#include "symdet/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace symdet {

BigFloat BigFloat::from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.value_, q.get_mpq_t(), rnd);
    return r;
}

BigFloat BigFloat::from_mpz(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_z(r.value_, z.get_mpz_t(), rnd);
    return r;
}

BigFloat BigFloat::from_si(long v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.value_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_double(double v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.value_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_string(const std::string& decimal, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_str(r.value_, decimal.c_str(), 10, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_add(r.value_, a.value_, b.value_, rnd);
    return r;
}

BigFloat BigFloat::sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_sub(r.value_, a.value_, b.value_, rnd);
    return r;
}

BigFloat BigFloat::mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_mul(r.value_, a.value_, b.value_, rnd);
    return r;
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_div(r.value_, a.value_, b.value_, rnd);
    return r;
}

BigFloat BigFloat::sqrt(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_sqrt(r.value_, a.value_, rnd);
    return r;
}

mpz_class BigFloat::round_to_integer() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDN);
    return z;
}

mpq_class BigFloat::to_mpq() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
}

std::string BigFloat::str(int significant_digits) const {
    if (significant_digits < 1) significant_digits = 1;
    std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", significant_digits - 1, value_);
    return std::string(buf.data());
}

} // namespace symdet
