#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "symdet/polynomial.hpp"

namespace symdet {

// Per-variable matrix of entry degrees: sigma_ij = deg(M_ij, x), with 0 for
// an absent variable and for zero entries. known_zero marks entries that are
// provably the zero polynomial (needed for pivot permutation; contraction
// arithmetic itself runs on the plain integers).
struct DegreeMatrix {
    std::size_t order = 0;
    std::size_t var = 0;
    std::vector<std::uint64_t> degree;
    std::vector<std::uint8_t> known_zero;

    std::uint64_t deg(std::size_t i, std::size_t j) const { return degree[i * order + j]; }
    std::uint64_t& deg(std::size_t i, std::size_t j) { return degree[i * order + j]; }
    bool zero(std::size_t i, std::size_t j) const { return known_zero[i * order + j] != 0; }
    void set_zero(std::size_t i, std::size_t j, bool z) { known_zero[i * order + j] = z ? 1 : 0; }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
};

DegreeMatrix build_degree_matrix(const PolyMatrix& m, std::size_t var_index);

// One Chio step on the degree matrix: order n -> n-1 with
// sigma'_ij = max(sigma_11 + sigma_{i+1,j+1}, sigma_{i+1,1} + sigma_{1,j+1})
// and the consumed pivot degree sigma_11 returned alongside. Requires n >= 3.
std::pair<DegreeMatrix, std::uint64_t> chio_degree_contract(const DegreeMatrix& omega);

struct DegreeEstimateStats {
    std::uint64_t contraction_stages = 0;
    std::uint64_t stage_ops_max = 0;   // ops in the costliest single contraction
    std::uint64_t total_ops = 0;       // ops across all stages plus the assignment refinement
};

struct VariableBound {
    std::uint64_t bound = 0;
    bool pivot_permuted = false;   // a zero pivot forced a row/column swap
    bool possibly_loose = false;   // some subtracted pivot was itself a derived bound
};

// Upper bound on deg(det M, x) from the degree matrix alone. Runs the Chio
// recursion (collecting pivots, permuting identically-zero pivots away) and
// tightens the result with the exact max-plus assignment value, which the
// recursion never undercuts; the assignment value is also what makes the
// bound invariant under row/column permutations.
VariableBound estimate_from_degree_matrix(DegreeMatrix omega, DegreeEstimateStats* stats = nullptr);

VariableBound estimate_degree(const PolyMatrix& m, std::size_t var_index,
                              DegreeEstimateStats* stats = nullptr);

struct DegreeBoundReport {
    std::vector<VariableBound> per_var;

    std::vector<std::uint64_t> bounds() const {
        std::vector<std::uint64_t> b;
        b.reserve(per_var.size());
        for (const auto& v : per_var) b.push_back(v.bound);
        return b;
    }
};

DegreeBoundReport estimate_all_degrees(const PolyMatrix& m);

} // namespace symdet
