#include "symdet/oracle.hpp"

namespace symdet {

Polynomial det_symbolic_bareiss(const PolyMatrix& m) {
    const std::size_t n = m.order();
    std::vector<Polynomial> a;
    a.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.push_back(m.at(i, j));

    int sign = 1;
    Polynomial prev = Polynomial::constant(m.vars(), 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && a[r * n + k].is_zero()) ++r;
            if (r == n) return Polynomial(m.vars());
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
            sign = -sign;
        }
        const Polynomial pivot = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = divexact(pivot * a[i * n + j] - a[i * n + k] * a[k * n + j], prev);
            }
            a[i * n + k] = Polynomial(m.vars());
        }
        prev = pivot;
    }
    Polynomial det = a[(n - 1) * n + (n - 1)];
    return sign < 0 ? -det : det;
}

namespace {

Polynomial cofactor_rec(const PolyMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    const std::size_t k = rows.size();
    if (k == 1) return m.at(rows[0], cols[0]);
    Polynomial acc(m.vars());
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < k; ++c) {
        const Polynomial& entry = m.at(rows[0], cols[c]);
        if (entry.is_zero()) continue;
        std::vector<std::size_t> sub_cols;
        sub_cols.reserve(k - 1);
        for (std::size_t j = 0; j < k; ++j)
            if (j != c) sub_cols.push_back(cols[j]);
        Polynomial minor = cofactor_rec(m, sub_rows, sub_cols);
        Polynomial term = entry * minor;
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

Polynomial det_symbolic_cofactor(const PolyMatrix& m, std::size_t max_order) {
    if (m.order() > max_order)
        throw instance_error("cofactor expansion capped at order " + std::to_string(max_order));
    std::vector<std::size_t> idx(m.order());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return cofactor_rec(m, idx, idx);
}

} // namespace symdet
