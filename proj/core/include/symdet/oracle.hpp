#pragma once

#include "symdet/polynomial.hpp"

namespace symdet {

// Exact symbolic determinant by fraction-free elimination; every division is
// exact in the polynomial ring. Zero pivots are handled by row swaps with
// sign tracking; an all-zero pivot column short-circuits to 0.
Polynomial det_symbolic_bareiss(const PolyMatrix& m);

// Exact symbolic determinant by first-row Laplace expansion. Factorial cost;
// refuses orders above 8 so nobody leans on it by accident.
Polynomial det_symbolic_cofactor(const PolyMatrix& m, std::size_t max_order = 8);

} // namespace symdet
