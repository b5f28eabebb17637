#pragma once

// Weight modules over the covering quantum group: simple highest-weight
// modules built as truncated Verma quotients, duals through the antipode,
// parity shift, tensor products through the coproduct, and the four
// evaluation / coevaluation morphisms.  A module is an immutable flat-basis
// object graded by X-hat; K_mu and J_mu act diagonally through the grading.
// Morphisms carry tensor-list boundaries (factors compared by identity) and
// sparse columns over the row-major flat index of the boundary.

#include <map>
#include <memory>
#include <vector>

#include "covknot/half_qgroup.hpp"

namespace covknot {

// sparse vector in the flat basis of a module or tensor-list boundary
using SparseVec = std::map<size_t, TauScalar>;

void accumulate(SparseVec& v, size_t idx, const TauScalar& c);
SparseVec scaleVec(const TauScalar& c, const SparseVec& v);
SparseVec addVec(const SparseVec& a, const SparseVec& b);

class Module {
public:
    Module(CartanDatum datum, std::vector<BigWeight> weights,
           std::vector<std::vector<SparseVec>> eColumns,
           std::vector<std::vector<SparseVec>> fColumns);

    const CartanDatum& datum() const { return cd; }
    size_t dim() const { return wts.size(); }
    const BigWeight& weight(size_t l) const { return wts[l]; }
    int parity(size_t l) const { return wts[l].eps; }

    // E_i b_l and F_i b_l as sparse columns
    const SparseVec& eColumn(int i, size_t l) const { return eAct[i - 1][l]; }
    const SparseVec& fColumn(int i, size_t l) const { return fAct[i - 1][l]; }

    SparseVec applyE(int i, const SparseVec& v) const;
    SparseVec applyF(int i, const SparseVec& v) const;

private:
    CartanDatum cd;
    std::vector<BigWeight> wts;
    std::vector<std::vector<SparseVec>> eAct, fAct;  // [i-1][basis index]
};

using ModulePtr = std::shared_ptr<const Module>;

// simple module of dominant highest weight lambda, built as the quotient of
// the Verma span of pivot F-words by the top-down maximal submodule; basis
// vectors are lex-first F-word images, grades sorted by height
ModulePtr constructSimple(const HalfAlgebra& f, const Weight& lambda);

// dual basis module with action (x phi)(v) = pi^{p(phi) p(x)} phi(S(x) v)
ModulePtr dualModule(const ModulePtr& v);

// same actions with every basis parity flipped
ModulePtr parityShift(const ModulePtr& v);

// tensor product through the coproduct, first factor index major
ModulePtr tensor(const ModulePtr& a, const ModulePtr& b);

// ---- morphisms between tensor-list boundaries ----------------------------

struct Morphism {
    std::vector<ModulePtr> dom, cod;
    std::vector<SparseVec> cols;  // image of each domain basis vector
};

size_t boundaryDim(const std::vector<ModulePtr>& factors);
// coproduct action of E_i / F_i on one flat basis vector of a boundary
SparseVec boundaryActE(const std::vector<ModulePtr>& factors, int i, size_t flat);
SparseVec boundaryActF(const std::vector<ModulePtr>& factors, int i, size_t flat);
// total X-hat degree of one flat basis vector
BigWeight boundaryWeight(const std::vector<ModulePtr>& factors, size_t flat);

Morphism identityMorphism(std::vector<ModulePtr> boundary);
// g after f; throws std::invalid_argument unless cod(f) and dom(g) are the
// same factor list
Morphism compose(const Morphism& g, const Morphism& f);
// side-by-side tensor of parity-even morphisms (all diagrammatic generators
// are even, so no Koszul sign arises)
Morphism tensorMorphism(const Morphism& a, const Morphism& b);
SparseVec applyMorphism(const Morphism& m, const SparseVec& v);
Morphism scaleMorphism(const TauScalar& c, const Morphism& m);
bool morphismEqual(const Morphism& a, const Morphism& b);
// the single entry of a closed-diagram morphism [] -> []
TauScalar scalarValue(const Morphism& m);

// ---- cups and caps --------------------------------------------------------

// vstar must be dualModule(v): the pairings below read off dual-basis matching
struct CupsCaps {
    Morphism ev;     // [V*, V] -> []       ev(f (x) w) = f(w)
    Morphism qtr;    // [V, V*] -> []       qtr(w (x) f) = pi^{p} q^{-<rho~,|w|>} f(w)
    Morphism coev;   // [] -> [V*, V]       1 -> sum_b pi^{p(b)} q^{<rho~,|b|>} b* (x) b
    Morphism coqtr;  // [] -> [V, V*]       1 -> sum_b b (x) b*
};
CupsCaps cupsCaps(const ModulePtr& v, const ModulePtr& vstar);

}  // namespace covknot
