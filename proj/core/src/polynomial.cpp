#include "symdet/polynomial.hpp"

#include <algorithm>
#include <unordered_set>

namespace symdet {

VarSet::VarSet(std::vector<std::string> names) {
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names) {
        if (n.empty()) throw instance_error("variable names must be non-empty");
        if (!seen.insert(n).second) throw instance_error("duplicate variable name '" + n + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

Polynomial Polynomial::constant(VarSet vars, mpz_class value) {
    Polynomial p(std::move(vars));
    if (value != 0) p.terms_.emplace(Monomial(std::vector<std::uint64_t>(p.vars_.size(), 0)), std::move(value));
    return p;
}

Polynomial Polynomial::variable(VarSet vars, std::size_t index) {
    if (index >= vars.size()) throw instance_error("variable index out of range");
    Polynomial p(std::move(vars));
    std::vector<std::uint64_t> e(p.vars_.size(), 0);
    e[index] = 1;
    p.terms_.emplace(Monomial(std::move(e)), mpz_class(1));
    return p;
}

Polynomial Polynomial::term(VarSet vars, Monomial m, mpz_class coeff) {
    if (m.size() != vars.size()) throw instance_error("monomial length does not match variable set");
    Polynomial p(std::move(vars));
    if (coeff != 0) p.terms_.emplace(std::move(m), std::move(coeff));
    return p;
}

Polynomial Polynomial::from_ascending_terms(VarSet vars,
                                            std::vector<std::pair<Monomial, mpz_class>> terms) {
    Polynomial p(std::move(vars));
    for (auto& [m, c] : terms)
        p.terms_.emplace_hint(p.terms_.end(), std::move(m), std::move(c));
    return p;
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0 &&
           terms_.begin()->second == 1;
}

std::uint64_t Polynomial::degree_in(std::size_t var_index) const {
    if (var_index >= vars_.size()) throw instance_error("variable index out of range");
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var_index]);
    return d;
}

std::uint64_t Polynomial::degree_in(std::string_view var_name) const {
    auto idx = vars_.index_of(var_name);
    if (!idx) throw instance_error("unknown variable '" + std::string(var_name) + "'");
    return degree_in(*idx);
}

void Polynomial::add_term(const Monomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::require_same_vars(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) throw instance_error("operands live over different variable sets");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_same_vars(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_same_vars(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

namespace {

// Monomials packed into one machine word, ordered compatibly with graded-lex:
// the total degree sits in the top field, then the exponents from slot 0
// down. Valid whenever (v + 1) fields of `width` bits fit in 63 bits.
struct PackedLayout {
    unsigned width = 0;
    std::size_t v = 0;
    bool valid = false;

    static PackedLayout plan(std::size_t v, std::uint64_t max_total_degree) {
        PackedLayout layout;
        layout.v = v;
        unsigned width = 1;
        while (width < 62 && (std::uint64_t{1} << width) <= max_total_degree) ++width;
        layout.width = width;
        layout.valid = v > 0 && (std::uint64_t{1} << width) > max_total_degree &&
                       (v + 1) * static_cast<std::size_t>(width) <= 63;
        return layout;
    }

    std::uint64_t pack(const Monomial& m) const {
        std::uint64_t key = m.total_degree();
        for (std::size_t i = 0; i < v; ++i) key = (key << width) | m[i];
        return key;
    }

    std::vector<std::uint64_t> unpack(std::uint64_t key) const {
        const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
        std::vector<std::uint64_t> exps(v);
        for (std::size_t i = v; i-- > 0;) {
            exps[i] = key & mask;
            key >>= width;
        }
        return exps;
    }
};

std::uint64_t max_total_degree(const Polynomial& p) {
    std::uint64_t d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.total_degree());
    return d;
}

Polynomial mul_packed(const Polynomial& a, const Polynomial& b, const PackedLayout& layout) {
    std::vector<std::pair<std::uint64_t, const mpz_class*>> ta, tb;
    ta.reserve(a.terms().size());
    tb.reserve(b.terms().size());
    for (const auto& [m, c] : a.terms()) ta.emplace_back(layout.pack(m), &c);
    for (const auto& [m, c] : b.terms()) tb.emplace_back(layout.pack(m), &c);

    std::map<std::uint64_t, mpz_class> acc;
    for (const auto& [ka, ca] : ta) {
        for (const auto& [kb, cb] : tb) {
            auto [it, fresh] = acc.try_emplace(ka + kb);
            mpz_addmul(it->second.get_mpz_t(), ca->get_mpz_t(), cb->get_mpz_t());
            (void)fresh;
        }
    }

    std::vector<std::pair<Monomial, mpz_class>> terms;
    terms.reserve(acc.size());
    for (auto& [key, coeff] : acc) {
        if (coeff == 0) continue;
        terms.emplace_back(Monomial(layout.unpack(key)), std::move(coeff));
    }
    return Polynomial::from_ascending_terms(a.vars(), std::move(terms));
}

} // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_same_vars(a, b);
    const PackedLayout layout =
        PackedLayout::plan(a.vars_.size(), max_total_degree(a) + max_total_degree(b));
    if (layout.valid && !a.is_zero() && !b.is_zero()) return mul_packed(a, b, layout);

    Polynomial r(a.vars_);
    const std::size_t v = a.vars_.size();
    std::vector<std::uint64_t> exps(v);
    mpz_class prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < v; ++i) exps[i] = ma[i] + mb[i];
            prod = ca * cb;
            r.add_term(Monomial(exps), prod);
        }
    }
    return r;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
    Polynomial result = Polynomial::constant(vars_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
}

namespace {

// One variable of Horner at a time: group the term range by the exponent of
// the current variable, recurse on the rest, then fold from the top exponent
// down, multiplying by x^gap across sparse exponents.
struct TermRef {
    const Monomial* m;
    const mpz_class* c;
};

BigFloat eval_group(const std::vector<TermRef>& range, std::size_t var,
                    std::span<const BigFloat> point, mpfr_prec_t prec) {
    if (range.empty()) return BigFloat(prec);
    const std::size_t v = point.size();
    if (var == v) {
        // All exponents consumed; range is a single constant term.
        return BigFloat::from_mpz(*range.front().c, prec);
    }
    std::map<std::uint64_t, std::vector<TermRef>> buckets;
    for (const auto& t : range) buckets[(*t.m)[var]].push_back(t);

    auto it = buckets.rbegin();
    std::uint64_t e = it->first;
    BigFloat acc = eval_group(it->second, var + 1, point, prec);
    ++it;
    for (; it != buckets.rend(); ++it) {
        const std::uint64_t gap = e - it->first;
        acc = acc * (gap == 1 ? point[var] : point[var].pow_ui(gap));
        acc += eval_group(it->second, var + 1, point, prec);
        e = it->first;
    }
    if (e > 0) acc = acc * point[var].pow_ui(e);
    return acc;
}

mpq_class pow_q(const mpq_class& x, std::uint64_t e) {
    if (e == 0) return mpq_class(1);
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), static_cast<unsigned long>(e));
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), static_cast<unsigned long>(e));
    return r;
}

} // namespace

BigFloat Polynomial::eval(std::span<const BigFloat> point, mpfr_prec_t prec) const {
    if (point.size() != vars_.size()) throw instance_error("evaluation point has wrong arity");
    if (prec < 2) throw instance_error("evaluation precision must be at least 2 bits");
    std::vector<TermRef> refs;
    refs.reserve(terms_.size());
    for (const auto& [m, c] : terms_) refs.push_back({&m, &c});
    return eval_group(refs, 0, point, prec);
}

mpq_class Polynomial::eval_exact(std::span<const mpq_class> point) const {
    if (point.size() != vars_.size()) throw instance_error("evaluation point has wrong arity");
    mpq_class acc(0);
    for (const auto& [m, c] : terms_) {
        mpq_class t(c);
        for (std::size_t i = 0; i < point.size(); ++i)
            if (m[i] > 0) t *= pow_q(point[i], m[i]);
        acc += t;
    }
    return acc;
}

namespace {

Polynomial divexact_packed(const Polynomial& a, const Polynomial& b, const PackedLayout& layout) {
    std::map<std::uint64_t, mpz_class> rem;
    for (const auto& [m, c] : a.terms()) rem.emplace_hint(rem.end(), layout.pack(m), c);
    std::vector<std::pair<std::uint64_t, const mpz_class*>> divisor;
    divisor.reserve(b.terms().size());
    for (const auto& [m, c] : b.terms()) divisor.emplace_back(layout.pack(m), &c);
    const std::uint64_t lead_b_key = divisor.back().first;
    const mpz_class& lead_b_coeff = *divisor.back().second;
    const auto lead_b_exps = layout.unpack(lead_b_key);

    std::map<std::uint64_t, mpz_class> quotient;
    mpz_class qc, r_part;
    while (!rem.empty()) {
        auto lead = std::prev(rem.end());
        const auto lead_exps = layout.unpack(lead->first);
        for (std::size_t i = 0; i < layout.v; ++i)
            if (lead_exps[i] < lead_b_exps[i])
                throw divisibility_error("inexact polynomial division");
        mpz_tdiv_qr(qc.get_mpz_t(), r_part.get_mpz_t(), lead->second.get_mpz_t(),
                    lead_b_coeff.get_mpz_t());
        if (r_part != 0) throw divisibility_error("inexact polynomial division");
        const std::uint64_t qk = lead->first - lead_b_key;
        for (const auto& [bk, bc] : divisor) {
            auto [it, fresh] = rem.try_emplace(qk + bk);
            mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), bc->get_mpz_t());
            if (it->second == 0) rem.erase(it);
            (void)fresh;
        }
        quotient.emplace_hint(quotient.begin(), qk, qc);
    }

    std::vector<std::pair<Monomial, mpz_class>> terms;
    terms.reserve(quotient.size());
    for (auto& [key, coeff] : quotient)
        terms.emplace_back(Monomial(layout.unpack(key)), std::move(coeff));
    return Polynomial::from_ascending_terms(a.vars(), std::move(terms));
}

} // namespace

Polynomial divexact(const Polynomial& a, const Polynomial& b) {
    if (a.vars() != b.vars()) throw instance_error("operands live over different variable sets");
    if (b.is_zero()) throw divisibility_error("division by the zero polynomial");

    const PackedLayout layout = PackedLayout::plan(a.vars().size(), max_total_degree(a));
    if (layout.valid && !a.is_zero() && max_total_degree(b) <= max_total_degree(a))
        return divexact_packed(a, b, layout);

    Polynomial q(a.vars());
    Polynomial r = a;
    const auto& lead_b = *b.terms().rbegin();
    const std::size_t v = a.vars().size();
    while (!r.is_zero()) {
        const auto& lead_r = *r.terms().rbegin();
        std::vector<std::uint64_t> exps(v);
        for (std::size_t i = 0; i < v; ++i) {
            if (lead_r.first[i] < lead_b.first[i])
                throw divisibility_error("inexact polynomial division");
            exps[i] = lead_r.first[i] - lead_b.first[i];
        }
        mpz_class qc, rem;
        mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), lead_r.second.get_mpz_t(), lead_b.second.get_mpz_t());
        if (rem != 0) throw divisibility_error("inexact polynomial division");
        Polynomial t = Polynomial::term(a.vars(), Monomial(std::move(exps)), qc);
        q += t;
        r -= t * b;
    }
    return q;
}

PolyMatrix::PolyMatrix(VarSet vars, std::size_t order)
    : vars_(std::move(vars)), order_(order), entries_(order * order, Polynomial(vars_)) {
    if (order == 0) throw instance_error("matrix order must be at least 1");
}

PolyMatrix PolyMatrix::identity(VarSet vars, std::size_t order) {
    PolyMatrix m(vars, order);
    for (std::size_t i = 0; i < order; ++i) m.at(i, i) = Polynomial::constant(m.vars_, 1);
    return m;
}

void PolyMatrix::set(std::size_t i, std::size_t j, Polynomial p) {
    if (p.vars() != vars_) throw instance_error("entry variable set differs from matrix variable set");
    entries_[i * order_ + j] = std::move(p);
}

} // namespace symdet
