#include "symdet/kronmap.hpp"

#include <limits>

namespace symdet {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw instance_error("degree bounds too large for Kronecker packing");
    return a * b;
}

// The packing is invertible below the bounds exactly when every prefix
// satisfies sum_j d_j * n_j < n_{i+1} for the exponents n ordered ascending.
void assert_prefix_condition(std::span<const std::uint64_t> bounds,
                             std::span<const std::uint64_t> pack,
                             std::size_t begin, std::size_t end) {
    // Within a partition [begin, end) the exponents ascend from the target
    // (pack = 1) backwards.
    std::uint64_t prefix = 0;
    for (std::size_t r = end; r-- > begin + 1;) {
        prefix += checked_mul(bounds[r], pack[r]);
        if (prefix >= pack[r - 1])
            throw instance_error("Kronecker packing condition violated");
    }
}

} // namespace

std::pair<std::uint64_t, std::uint64_t> SubstitutionPlan::pack_exponents(const Monomial& m) const {
    const std::size_t v = vars.size();
    std::uint64_t k_low = 0, k_high = 0;
    for (std::size_t i = 0; i < v; ++i) {
        const std::uint64_t contrib = checked_mul(m[i], pack[i]);
        if (i <= split) k_low += contrib; else k_high += contrib;
    }
    return {k_low, k_high};
}

SubstitutionPlan make_plan(std::span<const std::uint64_t> bounds, const VarSet& vars) {
    const std::size_t v = vars.size();
    if (bounds.size() != v) throw instance_error("bound count does not match variable set");
    if (v == 0) throw instance_error("cannot build a plan over zero variables");

    SubstitutionPlan plan;
    plan.vars = vars;
    plan.bounds.assign(bounds.begin(), bounds.end());
    plan.split = (v + 1) / 2 - 1;          // x_t with t = ceil(v/2)
    plan.pack.assign(v, 1);
    plan.identity = v <= 2;

    for (std::size_t i = plan.split; i-- > 0;)
        plan.pack[i] = checked_mul(plan.pack[i + 1], bounds[i + 1] + 1);
    if (v >= 2)
        for (std::size_t i = v - 1; i-- > plan.split + 1;)
            plan.pack[i] = checked_mul(plan.pack[i + 1], bounds[i + 1] + 1);

    assert_prefix_condition(plan.bounds, plan.pack, 0, plan.split + 1);
    if (v >= 2) assert_prefix_condition(plan.bounds, plan.pack, plan.split + 1, v);

    if (plan.identity) {
        plan.reduced_vars = vars;
    } else {
        plan.reduced_vars = VarSet({vars.name(plan.split), vars.name(v - 1)});
    }
    return plan;
}

Polynomial reduce_poly(const Polynomial& p, const SubstitutionPlan& plan) {
    if (p.vars() != plan.vars) throw instance_error("polynomial does not match plan variables");
    if (plan.identity) return p;
    Polynomial out(plan.reduced_vars);
    for (const auto& [m, c] : p.terms()) {
        auto [k_low, k_high] = plan.pack_exponents(m);
        out.add_term(Monomial({k_low, k_high}), c);
    }
    return out;
}

PolyMatrix reduce_matrix(const PolyMatrix& m, const SubstitutionPlan& plan) {
    if (plan.identity) return m;
    PolyMatrix out(plan.reduced_vars, m.order());
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = 0; j < m.order(); ++j)
            out.set(i, j, reduce_poly(m.at(i, j), plan));
    return out;
}

std::pair<std::uint64_t, std::uint64_t> reduced_degree_bound(const SubstitutionPlan& plan) {
    const std::size_t v = plan.vars.size();
    std::uint64_t low = 0, high = 0;
    for (std::size_t i = 0; i <= plan.split; ++i)
        low += checked_mul(plan.bounds[i], plan.pack[i]);
    for (std::size_t i = plan.split + 1; i < v; ++i)
        high += checked_mul(plan.bounds[i], plan.pack[i]);
    return {low, high};
}

std::vector<std::uint64_t> lift_monomial(std::uint64_t k_low, std::uint64_t k_high,
                                         const SubstitutionPlan& plan) {
    const std::size_t v = plan.vars.size();
    std::vector<std::uint64_t> exps(v, 0);
    for (std::size_t i = 0; i < plan.split; ++i) {
        exps[i] = k_low / plan.pack[i];
        k_low %= plan.pack[i];
    }
    exps[plan.split] = k_low;
    if (v >= 2) {
        for (std::size_t i = plan.split + 1; i + 1 < v; ++i) {
            exps[i] = k_high / plan.pack[i];
            k_high %= plan.pack[i];
        }
        exps[v - 1] = k_high;
    }
    return exps;
}

Polynomial lift_poly(const Polynomial& reduced, const SubstitutionPlan& plan) {
    if (reduced.vars() != plan.reduced_vars)
        throw instance_error("polynomial does not match the plan's reduced variables");
    if (plan.identity) return reduced;
    Polynomial out(plan.vars);
    for (const auto& [m, c] : reduced.terms())
        out.add_term(Monomial(lift_monomial(m[0], m[1], plan)), c);
    return out;
}

} // namespace symdet
