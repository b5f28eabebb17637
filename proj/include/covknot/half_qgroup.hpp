#pragma once

// The half quantum (super)group f attached to a B(0,n) datum, realized on
// free words in the generators theta_1..theta_n.  Carries the i-th
// derivation, the defining bilinear form (computed recursively with
// memoization), the word-reversal antiautomorphism sigma, Serre-element
// radical checks, and per-grade pivot-word bases with dual bases.

#include <map>
#include <tuple>
#include <vector>

#include "covknot/root_datum.hpp"

namespace covknot {

using Word = std::vector<int>;  // letters are node indices 1..n

// linear combination of words with TauScalar coefficients
using FElement = std::map<Word, TauScalar>;

FElement fScale(const TauScalar& c, const FElement& x);
FElement fAdd(const FElement& x, const FElement& y);
// product is linear extension of concatenation
FElement fConcat(const FElement& x, const FElement& y);

class HalfAlgebra {
public:
    explicit HalfAlgebra(const CartanDatum& datum) : cd(datum) {}

    const CartanDatum& datum() const { return cd; }

    RootVector grade(const Word& w) const;
    // 0 or 1; words in one FElement share parity when homogeneous
    int wordParity(const Word& w) const;

    // r_i: theta_j -> delta_ij, r_i(xy) = r_i(x) y + pi^{p(i)p(x)} q^{i.|x|} x r_i(y)
    FElement irDerivation(int i, const FElement& x) const;

    // (1,1) = 1, (theta_i x, y) = (theta_i, theta_i) (x, r_i(y));
    // zero across distinct grades
    TauScalar bilinearForm(const FElement& x, const FElement& y) const;

    // word reversal, extended linearly
    FElement sigma(const FElement& x) const;

    // the (i,j) Serre element, i != j
    FElement serreElement(int i, int j) const;
    // true when the Serre element pairs to zero with every word of its grade
    bool serreCheck(int i, int j) const;

    // all words of grade nu in lex order
    std::vector<Word> allWords(const RootVector& nu) const;

    // graded dimension from the positive-root character (odd roots at most once)
    long long dimension(const RootVector& nu) const;

    // certified pivot words at grade nu, lex-first: the count matches
    // dimension(nu) and the Gram block on them is invertible (witnessed by a
    // nonzero modular determinant of the cleared block)
    const std::vector<Word>& gradeWords(const RootVector& nu) const;

    struct GradeBasis {
        std::vector<Word> words;      // pivot words, lex order
        std::vector<FElement> duals;  // (words[l], duals[m]) = delta_{lm}
    };
    const GradeBasis& gradeBasis(const RootVector& nu) const;

private:
    CartanDatum cd;
    mutable std::map<std::pair<Word, Word>, TauScalar> formMemo;
    mutable std::map<std::vector<long long>, std::vector<Word>> wordsMemo;
    mutable std::map<std::vector<long long>, GradeBasis> basisMemo;
    mutable std::map<std::vector<long long>, long long> dimMemo;
    mutable std::map<std::tuple<int, Word, Word>, unsigned long long> modMemo;
    mutable unsigned long long modMemoQ0 = 0;  // sample point the memo is valid for

    // cleared form evaluated in F_p at q = q0 with pi = (-1)^piSign; cleared
    // values lie in Z[pi, q^{+-1}], so the two pi signs cover all four tau
    // components.  Used only to pick pivot candidates, never certified values.
    unsigned long long clearedFormMod(int piSign, const Word& x, const Word& y,
                                      unsigned long long q0) const;

    TauScalar thetaNorm(int i) const;  // (theta_i, theta_i)
    // (x, y) cleared of its grade denominator; fraction-free
    TauScalar clearedForm(const Word& x, const Word& y) const;
    // prod_i (1 - pi_i q_i^{-2})^{nu_i}
    TauScalar gradeDenominator(const RootVector& nu) const;
    TauScalar wordForm(const Word& x, const Word& y) const;
};

}  // namespace covknot
