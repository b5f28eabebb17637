#pragma once

// Braiding layer: the quasi-R-matrix Theta (grade-by-grade from the dual
// bases of the half algebra), its inverse Theta-bar, the diagonal weight
// renormalization, the graded swap, and the braiding R = Theta o F o swap
// with its inverse realized through Theta-bar rather than matrix inversion.
// Operators act on tensor-list boundaries so the same code serves the pair
// braiding, the sideways braidings on dual factors, and the three-factor
// Yang-Baxter and braid-relation checks.

#include <vector>

#include "covknot/modules.hpp"

namespace covknot {

// single grade summand Theta_nu^{st} (Theta-bar_nu^{st} when barred):
// lowering operators on factor s, raising on factor t, s < t, Koszul signs
// against every factor before s resp. t
Morphism thetaTerm(const HalfAlgebra& f, const std::vector<ModulePtr>& boundary,
                   size_t s, size_t t, const RootVector& nu, bool barred);

// Theta^{st} / Theta-bar^{st} = identity + sum of grade summands; the sum is
// finite because only grades nu realized as weight differences inside both
// factors can act
Morphism thetaOn(const HalfAlgebra& f, const std::vector<ModulePtr>& boundary,
                 size_t s, size_t t, bool barred = false);

// diagonal renormalization f(|m_s|, |m_t|) on factors s, t (inverse values
// when inverted; f takes unit values, so inversion is componentwise)
Morphism weightRenormOn(const std::vector<ModulePtr>& boundary, size_t s, size_t t,
                        bool inverted = false);

// graded swap of adjacent factors s, s+1 with sign pi^{p(m_s) p(m_{s+1})}
Morphism swapAdjacent(const std::vector<ModulePtr>& boundary, size_t s);

// pair conveniences on the boundary [a, b]
Morphism theta(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b);
Morphism thetaBar(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b);

// braiding [a, b] -> [b, a]: swap, then the renormalization read on the
// swapped pair, then Theta
Morphism rMatrix(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b);
// inverse braiding [b, a] -> [a, b]: Theta-bar, inverse renormalization, swap
Morphism rInverse(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b);

// fTheta^{12} fTheta^{13} fTheta^{23} = fTheta^{23} fTheta^{13} fTheta^{12}
// on [m1, m2, m3], where fTheta^{st} = Theta^{st} o F^{st}
bool yangBaxterCheck(const HalfAlgebra& f, const ModulePtr& m1,
                     const ModulePtr& m2, const ModulePtr& m3);
// R12 R23 R12 = R23 R12 R23 as morphisms [m1, m2, m3] -> [m3, m2, m1]
bool braidRelCheck(const HalfAlgebra& f, const ModulePtr& m1,
                   const ModulePtr& m2, const ModulePtr& m3);

}  // namespace covknot
