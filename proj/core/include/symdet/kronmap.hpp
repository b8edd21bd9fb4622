#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "symdet/polynomial.hpp"

namespace symdet {

// Packing of v variables into the two partition targets (x_t, x_v):
// x_i -> x_t^{D_i} for i < t and x_i -> x_v^{D_i} for t < i < v, with
// D_i the product of (d_j + 1) over the rest of the partition. For v <= 2
// the partitions are singletons and the plan is the identity.
struct SubstitutionPlan {
    VarSet vars;                          // original variables
    VarSet reduced_vars;                  // {x_t, x_v}; equals vars when identity
    bool identity = true;
    std::size_t split = 0;                // index of x_t
    std::vector<std::uint64_t> bounds;    // d_i the plan was built from
    std::vector<std::uint64_t> pack;      // D_i per variable; 1 on the targets

    // phi on a single exponent vector: packed exponents of (x_t, x_v).
    std::pair<std::uint64_t, std::uint64_t> pack_exponents(const Monomial& m) const;
};

SubstitutionPlan make_plan(std::span<const std::uint64_t> bounds, const VarSet& vars);

// phi applied coefficient-wise; a ring homomorphism.
Polynomial reduce_poly(const Polynomial& p, const SubstitutionPlan& plan);
PolyMatrix reduce_matrix(const PolyMatrix& m, const SubstitutionPlan& plan);

// Degree bound of each target variable in the reduced determinant:
// D = sum_i d_i * prod_{k>i} (d_k + 1) over each partition.
std::pair<std::uint64_t, std::uint64_t> reduced_degree_bound(const SubstitutionPlan& plan);

// psi on a reduced monomial: repeated quotient/remainder by the D_i.
// Inverts pack_exponents for every monomial within the plan's bounds.
std::vector<std::uint64_t> lift_monomial(std::uint64_t k_low, std::uint64_t k_high,
                                         const SubstitutionPlan& plan);

// psi applied to a whole polynomial over plan.reduced_vars.
Polynomial lift_poly(const Polynomial& reduced, const SubstitutionPlan& plan);

} // namespace symdet
