#include "symdet/degbound.hpp"

#include <algorithm>
#include <limits>

namespace symdet {

void DegreeMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < order; ++j) {
        std::swap(degree[a * order + j], degree[b * order + j]);
        std::swap(known_zero[a * order + j], known_zero[b * order + j]);
    }
}

void DegreeMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < order; ++i) {
        std::swap(degree[i * order + a], degree[i * order + b]);
        std::swap(known_zero[i * order + a], known_zero[i * order + b]);
    }
}

DegreeMatrix build_degree_matrix(const PolyMatrix& m, std::size_t var_index) {
    if (var_index >= m.vars().size()) throw instance_error("variable index out of range");
    DegreeMatrix omega;
    omega.order = m.order();
    omega.var = var_index;
    omega.degree.resize(omega.order * omega.order);
    omega.known_zero.resize(omega.order * omega.order);
    for (std::size_t i = 0; i < omega.order; ++i) {
        for (std::size_t j = 0; j < omega.order; ++j) {
            const Polynomial& p = m.at(i, j);
            omega.deg(i, j) = p.is_zero() ? 0 : p.degree_in(var_index);
            omega.set_zero(i, j, p.is_zero());
        }
    }
    return omega;
}

std::pair<DegreeMatrix, std::uint64_t> chio_degree_contract(const DegreeMatrix& omega) {
    const std::size_t n = omega.order;
    if (n < 3) throw instance_error("degree contraction needs order >= 3");
    DegreeMatrix out;
    out.order = n - 1;
    out.var = omega.var;
    out.degree.resize(out.order * out.order);
    out.known_zero.resize(out.order * out.order);
    const std::uint64_t pivot = omega.deg(0, 0);
    for (std::size_t i = 0; i < out.order; ++i) {
        for (std::size_t j = 0; j < out.order; ++j) {
            const std::uint64_t a = pivot + omega.deg(i + 1, j + 1);
            const std::uint64_t b = omega.deg(i + 1, 0) + omega.deg(0, j + 1);
            out.deg(i, j) = std::max(a, b);
            const bool left_zero = omega.zero(0, 0) || omega.zero(i + 1, j + 1);
            const bool right_zero = omega.zero(i + 1, 0) || omega.zero(0, j + 1);
            out.set_zero(i, j, left_zero && right_zero);
        }
    }
    return {std::move(out), pivot};
}

namespace {

constexpr std::int64_t kForbidden = std::int64_t{1} << 50;
constexpr std::uint64_t kDegreeCap = std::uint64_t{1} << 40;

// Maximum-weight assignment over the degree matrix, skipping known-zero
// entries; this is the tightest bound obtainable from entry degrees alone
// (every determinant term is a permutation product). Returns false when no
// permutation avoids a zero entry, i.e. the determinant is identically zero.
bool max_assignment(const DegreeMatrix& omega, std::uint64_t& value, std::uint64_t& ops) {
    const std::size_t n = omega.order;
    const std::size_t inf = std::numeric_limits<std::size_t>::max();
    auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
        if (omega.zero(i, j)) return kForbidden;
        return -static_cast<std::int64_t>(omega.deg(i, j));
    };
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, inf), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i - 1;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), std::numeric_limits<std::int64_t>::max());
        std::vector<std::uint8_t> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            std::int64_t delta = std::numeric_limits<std::int64_t>::max();
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                ++ops;
                const std::int64_t cur = cost(i0, j - 1) - u[i0 + 1] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j] + 1] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != inf);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::int64_t total = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        if (omega.zero(match[j], j - 1)) return false;
        total += static_cast<std::int64_t>(omega.deg(match[j], j - 1));
    }
    value = static_cast<std::uint64_t>(total);
    return true;
}

bool all_known_zero(const DegreeMatrix& m) {
    for (auto z : m.known_zero)
        if (!z) return false;
    return true;
}

} // namespace

VariableBound estimate_from_degree_matrix(DegreeMatrix omega, DegreeEstimateStats* stats) {
    for (auto d : omega.degree)
        if (d > kDegreeCap) throw instance_error("entry degree too large for bound estimation");

    DegreeEstimateStats local;
    VariableBound result;
    const std::size_t n = omega.order;

    if (all_known_zero(omega)) {
        if (stats) *stats = local;
        return result;
    }
    if (n == 1) {
        result.bound = omega.zero(0, 0) ? 0 : omega.deg(0, 0);
        if (stats) *stats = local;
        return result;
    }

    std::uint64_t assign_value = 0, assign_ops = 0;
    const bool feasible = max_assignment(omega, assign_value, assign_ops);
    local.total_ops += assign_ops;
    if (!feasible) {
        // Every permutation product hits a zero entry: det is identically 0.
        if (stats) *stats = local;
        return result;
    }

    // Chio recursion, permuting identically-zero pivots out of the corner.
    DegreeMatrix cur = std::move(omega);
    std::vector<std::uint64_t> pivots;
    bool degenerate = false;
    while (cur.order >= 3) {
        if (cur.zero(0, 0)) {
            bool found = false;
            for (std::size_t i = 0; i < cur.order && !found; ++i)
                for (std::size_t j = 0; j < cur.order && !found; ++j)
                    if (!cur.zero(i, j)) {
                        cur.swap_rows(0, i);
                        cur.swap_cols(0, j);
                        result.pivot_permuted = true;
                        found = true;
                    }
            if (!found) {
                degenerate = true;
                break;
            }
        }
        auto [next, pivot] = chio_degree_contract(cur);
        const std::uint64_t stage_ops = 2 * (next.order) * (next.order);
        local.contraction_stages += 1;
        local.stage_ops_max = std::max(local.stage_ops_max, stage_ops);
        local.total_ops += stage_ops;
        pivots.push_back(pivot);
        cur = std::move(next);
    }

    std::uint64_t recursion_bound = 0;
    if (!degenerate) {
        const std::uint64_t maxdeg =
            std::max(cur.deg(0, 0) + cur.deg(1, 1), cur.deg(0, 1) + cur.deg(1, 0));
        std::int64_t s = static_cast<std::int64_t>(maxdeg);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            const std::uint64_t weight = n - 2 - k;
            s -= static_cast<std::int64_t>(weight * pivots[k]);
            local.total_ops += 1;
        }
        recursion_bound = s > 0 ? static_cast<std::uint64_t>(s) : 0;
    }
    result.possibly_loose = pivots.size() >= 2;

    result.bound = degenerate ? assign_value : std::min(recursion_bound, assign_value);
    if (stats) *stats = local;
    return result;
}

VariableBound estimate_degree(const PolyMatrix& m, std::size_t var_index, DegreeEstimateStats* stats) {
    return estimate_from_degree_matrix(build_degree_matrix(m, var_index), stats);
}

DegreeBoundReport estimate_all_degrees(const PolyMatrix& m) {
    DegreeBoundReport report;
    report.per_var.reserve(m.vars().size());
    for (std::size_t i = 0; i < m.vars().size(); ++i)
        report.per_var.push_back(estimate_degree(m, i));
    return report;
}

} // namespace symdet
