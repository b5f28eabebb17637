#pragma once

// Independent cross-check oracles: the Weyl dimension formula for so(2n+1)
// and the Kauffman-bracket Jones polynomial of a braid closure.

#include <vector>

#include "covknot/root_datum.hpp"

namespace covknot {

// dimension of the simple so(2n+1)-module of highest weight lambda
long long weylDim(int n, const Weight& lambda);

// Unnormalized Jones polynomial of the closure of a braid word, by the
// Kauffman bracket state sum in the variable A.  Every closed loop of a
// state contributes a factor -A^2 - A^{-2} (so the unknot evaluates to the
// loop value itself), and the writhe correction multiplies by (-A^3)^{-wr}.
// Letters are +-j for the generator s_j on `strands` strands.
Laurent kauffmanJones(int strands, const std::vector<int>& letters);

}  // namespace covknot
