#pragma once

// Exact dense linear algebra, one tau component at a time (each component is
// the rational function field), plus Gauss-Jordan inversion of TauScalar
// matrices over the full product ring.

#include <vector>

#include "covknot/scalar.hpp"

namespace covknot {

using RatVector = std::vector<RatFn>;
using RatMatrix = std::vector<RatVector>;

// Row echelon with unit pivots; rows stay fully reduced against each other.
struct RatEchelon {
    std::vector<RatVector> rows;
    std::vector<size_t> pivots;

    // eliminate committed rows from r; the result is zero iff r lies in the span
    RatVector reduce(RatVector r) const;
    // commit r if independent of the committed rows; returns false otherwise
    bool insert(RatVector r);
    size_t rank() const { return rows.size(); }
};

// basis of the right kernel of an m x n matrix given by equation rows
std::vector<RatVector> kernelBasis(const RatMatrix& equations, size_t cols);

// inverse of a square matrix; throws std::logic_error when singular
RatMatrix invertRatMatrix(RatMatrix a);

std::vector<std::vector<TauScalar>> invertTauMatrix(std::vector<std::vector<TauScalar>> a);

}  // namespace covknot
