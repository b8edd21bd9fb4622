#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdet/bigfloat.hpp"
#include "symdet/errors.hpp"

namespace symdet {

// Ordered set of variable names. The position of a name is the slot of its
// exponent in every Monomial built over this set; the order is fixed for the
// lifetime of a computation. Copies share storage.
class VarSet {
public:
    VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
    explicit VarSet(std::vector<std::string> names);

    std::size_t size() const { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const VarSet& other) const {
        return names_ == other.names_ || *names_ == *other.names_;
    }
    bool operator!=(const VarSet& other) const { return !(*this == other); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

// Exponent vector; length always matches the governing VarSet.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint64_t> exps) : exps_(std::move(exps)) {}

    std::size_t size() const { return exps_.size(); }
    std::uint64_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint64_t& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<std::uint64_t>& exponents() const { return exps_; }

    std::uint64_t total_degree() const {
        std::uint64_t t = 0;
        for (auto e : exps_) t += e;
        return t;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

private:
    std::vector<std::uint64_t> exps_;
};

// Graded-lexicographic order: total degree first, then lexicographic on the
// exponent vector with the lowest-index variable most significant.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.total_degree();
        const auto db = b.total_degree();
        if (da != db) return da < db;
        return a.exponents() < b.exponents();
    }
};

// Sparse multivariate polynomial with exact integer coefficients in canonical
// form: no stored coefficient is zero, terms kept in graded-lex order.
// Immutable value semantics; all operations are pure.
class Polynomial {
public:
    using TermMap = std::map<Monomial, mpz_class, GradedLexLess>;

    Polynomial() = default;
    explicit Polynomial(VarSet vars) : vars_(std::move(vars)) {}

    static Polynomial constant(VarSet vars, mpz_class value);
    static Polynomial variable(VarSet vars, std::size_t index);
    static Polynomial term(VarSet vars, Monomial m, mpz_class coeff);
    // Bulk construction from terms already in ascending graded-lex order with
    // no zero coefficients.
    static Polynomial from_ascending_terms(VarSet vars,
                                           std::vector<std::pair<Monomial, mpz_class>> terms);

    const VarSet& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }

    // Max exponent over terms; 0 for an absent variable and for the zero
    // polynomial.
    std::uint64_t degree_in(std::size_t var_index) const;
    std::uint64_t degree_in(std::string_view var_name) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(std::uint64_t e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Horner evaluation in precision-P floating point.
    BigFloat eval(std::span<const BigFloat> point, mpfr_prec_t prec) const;
    // Exact rational evaluation.
    mpq_class eval_exact(std::span<const mpq_class> point) const;

    void add_term(const Monomial& m, const mpz_class& c);

private:
    static void require_same_vars(const Polynomial& a, const Polynomial& b);

    VarSet vars_;
    TermMap terms_;
};

// Exact quotient a / b; throws divisibility_error unless b divides a in the
// polynomial ring over the integers.
Polynomial divexact(const Polynomial& a, const Polynomial& b);

// Square matrix of polynomials over one shared VarSet.
class PolyMatrix {
public:
    PolyMatrix(VarSet vars, std::size_t order);
    static PolyMatrix identity(VarSet vars, std::size_t order);

    std::size_t order() const { return order_; }
    const VarSet& vars() const { return vars_; }

    Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

    void set(std::size_t i, std::size_t j, Polynomial p);

private:
    VarSet vars_;
    std::size_t order_ = 0;
    std::vector<Polynomial> entries_;
};

} // namespace symdet
