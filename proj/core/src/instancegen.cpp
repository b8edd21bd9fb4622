#include "symdet/instancegen.hpp"

namespace symdet {

VarSet default_varset(std::size_t v) {
    std::vector<std::string> names;
    names.reserve(v);
    for (std::size_t i = 1; i <= v; ++i) names.push_back("x" + std::to_string(i));
    return VarSet(std::move(names));
}

Polynomial random_dense_poly(SplitMix64& rng, const VarSet& vars, std::uint64_t degree,
                             std::int64_t coeff_bound) {
    Polynomial p(vars);
    const std::size_t v = vars.size();
    std::vector<std::uint64_t> exps(v, 0);
    while (true) {
        const std::int64_t c = rng.range(-coeff_bound, coeff_bound);
        if (c != 0) p.add_term(Monomial(exps), mpz_class(static_cast<long>(c)));
        // Odometer over exponent vectors bounded by `degree` per variable.
        std::size_t pos = v;
        while (pos > 0) {
            if (exps[pos - 1] < degree) {
                ++exps[pos - 1];
                break;
            }
            exps[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return p;
}

PolyMatrix random_dense_matrix(SplitMix64& rng, const VarSet& vars, std::size_t order,
                               std::uint64_t degree, std::int64_t coeff_bound) {
    PolyMatrix m(vars, order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j)
            m.set(i, j, random_dense_poly(rng, vars, degree, coeff_bound));
    return m;
}

PolyMatrix bench_instance(std::uint64_t seed, std::size_t order, std::size_t vars,
                          std::uint64_t degree, std::int64_t coeff_bound, std::uint64_t index) {
    // Mix the stream coordinates into one seed so each trial is independent.
    SplitMix64 mix(seed ^ (0xa24baed4963ee407ULL * (index + 1)) ^
                   (0x9fb21c651e98df25ULL * static_cast<std::uint64_t>(order)));
    VarSet vs = default_varset(vars);
    return random_dense_matrix(mix, vs, order, degree, coeff_bound);
}

} // namespace symdet
