#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symdet/polynomial.hpp"

namespace symdet {

// Deterministic 64-bit generator (splitmix64). The benchmark protocol and
// every seeded test corpus run on this so instance streams are identical
// across platforms and standard-library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

VarSet default_varset(std::size_t v);

// Dense random polynomial: every monomial with per-variable degree <= degree
// gets a uniform coefficient in [-coeff_bound, coeff_bound].
Polynomial random_dense_poly(SplitMix64& rng, const VarSet& vars, std::uint64_t degree,
                             std::int64_t coeff_bound);

PolyMatrix random_dense_matrix(SplitMix64& rng, const VarSet& vars, std::size_t order,
                               std::uint64_t degree, std::int64_t coeff_bound);

// Instance `index` of the stream identified by (seed, order, vars, degree,
// coeff_bound); pure function of its arguments.
PolyMatrix bench_instance(std::uint64_t seed, std::size_t order, std::size_t vars,
                          std::uint64_t degree, std::int64_t coeff_bound, std::uint64_t index);

} // namespace symdet
