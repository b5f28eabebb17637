#include "covknot/braiding.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace covknot {

namespace {

std::vector<size_t> boundaryStrides(const std::vector<ModulePtr>& factors) {
    std::vector<size_t> stride(factors.size(), 1);
    for (size_t u = factors.size(); u-- > 1;)
        stride[u - 1] = stride[u] * factors[u]->dim();
    return stride;
}

std::vector<size_t> decodeFlat(const std::vector<ModulePtr>& factors,
                               const std::vector<size_t>& stride, size_t flat) {
    std::vector<size_t> idx(factors.size());
    for (size_t u = 0; u < factors.size(); ++u) {
        idx[u] = flat / stride[u];
        flat %= stride[u];
    }
    return idx;
}

// columns of the word operator F_w (raising: E_w) on a module, the rightmost
// letter acting first
std::vector<SparseVec> wordColumns(const Module& m, const Word& w, bool raising) {
    std::vector<SparseVec> cols(m.dim());
    for (size_t l = 0; l < m.dim(); ++l) {
        SparseVec v{{l, TauScalar(1)}};
        for (auto it = w.rbegin(); it != w.rend() && !v.empty(); ++it)
            v = raising ? m.applyE(*it, v) : m.applyF(*it, v);
        cols[l] = std::move(v);
    }
    return cols;
}

// columns of the raising operator attached to an element of f: sum of E_w
// over the words of the element, weighted by its coefficients
std::vector<SparseVec> elementColumns(const Module& m, const FElement& x) {
    std::vector<SparseVec> cols(m.dim());
    for (const auto& [w, c] : x) {
        std::vector<SparseVec> wc = wordColumns(m, w, true);
        for (size_t l = 0; l < m.dim(); ++l)
            for (const auto& [r, a] : wc[l]) accumulate(cols[l], r, c * a);
    }
    return cols;
}

// grades realized as weight differences inside a module
std::set<RootVector> weightDiffGrades(const CartanDatum& cd, const Module& m) {
    std::set<Weight> wts;
    for (size_t l = 0; l < m.dim(); ++l) wts.insert(m.weight(l).wt);
    std::set<RootVector> out;
    for (const Weight& hi : wts)
        for (const Weight& lo : wts) {
            if (hi == lo) continue;
            auto nu = rootDecompose(cd, hi - lo);
            if (!nu) continue;
            bool nonneg = true;
            for (long long c : nu->m) nonneg = nonneg && c >= 0;
            if (nonneg) out.insert(*nu);
        }
    return out;
}

}  // namespace

Morphism thetaTerm(const HalfAlgebra& f, const std::vector<ModulePtr>& boundary,
                   size_t s, size_t t, const RootVector& nu, bool barred) {
    if (s >= t || t >= boundary.size())
        throw std::invalid_argument("thetaTerm needs factor indices s < t inside the boundary");
    const Module& ms = *boundary[s];
    const Module& mt = *boundary[t];
    const CartanDatum& cd = ms.datum();

    Morphism out;
    out.dom = boundary;
    out.cod = boundary;
    out.cols.assign(boundaryDim(boundary), {});

    TauScalar coeff;
    if (barred) {
        coeff = piPow(nu.parity()) * TauScalar::q((int)(rootDot(cd, nu, nu) / 2));
    } else {
        long long dsum = 0;
        for (int i = 1; i <= nu.rank(); ++i) dsum += cd.d(i) * nu.m[i - 1];
        coeff = piPow(nu.parityP() + nu.parity()) * TauScalar::q((int)dsum);
        if (nu.height() % 2 != 0) coeff = -coeff;
    }

    // operator columns for each basis word of f_nu and its dual element
    const auto& words = f.gradeWords(nu);
    const auto& basis = f.gradeBasis(nu);
    std::vector<std::vector<SparseVec>> lower, raise;
    for (size_t k = 0; k < words.size(); ++k) {
        std::vector<SparseVec> lo = wordColumns(ms, words[k], false);
        FElement dual = barred ? f.sigma(basis.duals[k]) : basis.duals[k];
        std::vector<SparseVec> ra = elementColumns(mt, dual);
        auto dead = [](const std::vector<SparseVec>& cols) {
            return std::all_of(cols.begin(), cols.end(),
                               [](const SparseVec& v) { return v.empty(); });
        };
        if (dead(lo) || dead(ra)) continue;
        lower.push_back(std::move(lo));
        raise.push_back(std::move(ra));
    }
    if (lower.empty()) return out;

    std::vector<size_t> stride = boundaryStrides(boundary);
    for (size_t flat = 0; flat < out.cols.size(); ++flat) {
        std::vector<size_t> idx = decodeFlat(boundary, stride, flat);
        long long passed = 0;
        for (size_t u = 0; u < t; ++u) {
            int p = boundary[u]->parity(idx[u]);
            if (u < s) passed += p;
            passed += p;
        }
        TauScalar sg = coeff * piPow((long long)nu.parity() * passed);
        size_t base = flat - idx[s] * stride[s] - idx[t] * stride[t];
        for (size_t k = 0; k < lower.size(); ++k) {
            const SparseVec& lo = lower[k][idx[s]];
            const SparseVec& ra = raise[k][idx[t]];
            if (lo.empty() || ra.empty()) continue;
            for (const auto& [r, cf] : lo)
                for (const auto& [r2, ce] : ra)
                    accumulate(out.cols[flat], base + r * stride[s] + r2 * stride[t],
                               sg * cf * ce);
        }
    }
    return out;
}

Morphism thetaOn(const HalfAlgebra& f, const std::vector<ModulePtr>& boundary,
                 size_t s, size_t t, bool barred) {
    if (s >= t || t >= boundary.size())
        throw std::invalid_argument("thetaOn needs factor indices s < t inside the boundary");
    const CartanDatum& cd = boundary[s]->datum();
    std::set<RootVector> grades = weightDiffGrades(cd, *boundary[s]);
    std::set<RootVector> other = weightDiffGrades(cd, *boundary[t]);

    Morphism out = identityMorphism(boundary);
    for (const RootVector& nu : grades) {
        if (!other.count(nu) || f.gradeWords(nu).empty()) continue;
        Morphism term = thetaTerm(f, boundary, s, t, nu, barred);
        for (size_t c = 0; c < out.cols.size(); ++c)
            out.cols[c] = addVec(out.cols[c], term.cols[c]);
    }
    return out;
}

Morphism weightRenormOn(const std::vector<ModulePtr>& boundary, size_t s, size_t t,
                        bool inverted) {
    if (s >= t || t >= boundary.size())
        throw std::invalid_argument("weightRenormOn needs factor indices s < t inside the boundary");
    const CartanDatum& cd = boundary[s]->datum();
    Morphism out;
    out.dom = boundary;
    out.cod = boundary;
    std::vector<size_t> stride = boundaryStrides(boundary);
    size_t total = boundaryDim(boundary);
    out.cols.reserve(total);
    for (size_t flat = 0; flat < total; ++flat) {
        std::vector<size_t> idx = decodeFlat(boundary, stride, flat);
        TauScalar c = fFunction(cd, boundary[s]->weight(idx[s]).wt,
                                boundary[t]->weight(idx[t]).wt);
        if (inverted) c = c.tryInvert();
        out.cols.push_back({{flat, c}});
    }
    return out;
}

Morphism swapAdjacent(const std::vector<ModulePtr>& boundary, size_t s) {
    if (s + 1 >= boundary.size())
        throw std::invalid_argument("swapAdjacent needs adjacent factors inside the boundary");
    std::vector<ModulePtr> cod = boundary;
    std::swap(cod[s], cod[s + 1]);

    Morphism out;
    out.dom = boundary;
    out.cod = cod;
    std::vector<size_t> strideDom = boundaryStrides(boundary);
    std::vector<size_t> strideCod = boundaryStrides(cod);
    size_t total = boundaryDim(boundary);
    out.cols.reserve(total);
    for (size_t flat = 0; flat < total; ++flat) {
        std::vector<size_t> idx = decodeFlat(boundary, strideDom, flat);
        long long sign = (long long)boundary[s]->parity(idx[s]) *
                         boundary[s + 1]->parity(idx[s + 1]);
        std::swap(idx[s], idx[s + 1]);
        size_t target = 0;
        for (size_t u = 0; u < cod.size(); ++u) target += idx[u] * strideCod[u];
        out.cols.push_back({{target, piPow(sign)}});
    }
    return out;
}

Morphism theta(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b) {
    return thetaOn(f, {a, b}, 0, 1, false);
}

Morphism thetaBar(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b) {
    return thetaOn(f, {a, b}, 0, 1, true);
}

Morphism rMatrix(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b) {
    Morphism sw = swapAdjacent({a, b}, 0);
    Morphism rn = weightRenormOn(sw.cod, 0, 1, false);
    Morphism th = thetaOn(f, sw.cod, 0, 1, false);
    return compose(th, compose(rn, sw));
}

Morphism rInverse(const HalfAlgebra& f, const ModulePtr& a, const ModulePtr& b) {
    std::vector<ModulePtr> swapped{b, a};
    Morphism tb = thetaOn(f, swapped, 0, 1, true);
    Morphism rn = weightRenormOn(swapped, 0, 1, true);
    Morphism sw = swapAdjacent(swapped, 0);
    return compose(sw, compose(rn, tb));
}

bool yangBaxterCheck(const HalfAlgebra& f, const ModulePtr& m1,
                     const ModulePtr& m2, const ModulePtr& m3) {
    std::vector<ModulePtr> b{m1, m2, m3};
    auto fTheta = [&](size_t s, size_t t) {
        return compose(thetaOn(f, b, s, t, false), weightRenormOn(b, s, t, false));
    };
    Morphism t12 = fTheta(0, 1), t13 = fTheta(0, 2), t23 = fTheta(1, 2);
    Morphism lhs = compose(t12, compose(t13, t23));
    Morphism rhs = compose(t23, compose(t13, t12));
    return morphismEqual(lhs, rhs);
}

bool braidRelCheck(const HalfAlgebra& f, const ModulePtr& m1,
                   const ModulePtr& m2, const ModulePtr& m3) {
    auto rLeft = [&](const ModulePtr& a, const ModulePtr& b, const ModulePtr& c) {
        return tensorMorphism(rMatrix(f, a, b), identityMorphism({c}));
    };
    auto rRight = [&](const ModulePtr& a, const ModulePtr& b, const ModulePtr& c) {
        return tensorMorphism(identityMorphism({a}), rMatrix(f, b, c));
    };
    Morphism lhs = compose(rLeft(m2, m3, m1),
                           compose(rRight(m2, m1, m3), rLeft(m1, m2, m3)));
    Morphism rhs = compose(rRight(m3, m1, m2),
                           compose(rLeft(m1, m3, m2), rRight(m1, m2, m3)));
    return morphismEqual(lhs, rhs);
}

}  // namespace covknot
