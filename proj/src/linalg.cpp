#include "covknot/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace covknot {

RatVector RatEchelon::reduce(RatVector r) const {
    for (size_t k = 0; k < rows.size(); ++k) {
        RatFn f = r[pivots[k]];  // by value: the loop below overwrites r[pivots[k]]
        if (f.isZero()) continue;
        for (size_t c = 0; c < r.size(); ++c) r[c] = r[c] - f * rows[k][c];
    }
    return r;
}

bool RatEchelon::insert(RatVector r) {
    r = reduce(std::move(r));
    size_t piv = r.size();
    for (size_t c = 0; c < r.size(); ++c)
        if (!r[c].isZero()) { piv = c; break; }
    if (piv == r.size()) return false;
    RatFn inv = r[piv].inverse();
    for (auto& f : r) f = f * inv;
    // keep earlier rows reduced against the new pivot
    for (size_t k = 0; k < rows.size(); ++k) {
        RatFn g = rows[k][piv];  // by value: the loop below overwrites rows[k][piv]
        if (g.isZero()) continue;
        for (size_t c = 0; c < r.size(); ++c) rows[k][c] = rows[k][c] - g * r[c];
    }
    rows.push_back(std::move(r));
    pivots.push_back(piv);
    return true;
}

std::vector<RatVector> kernelBasis(const RatMatrix& equations, size_t cols) {
    RatEchelon ech;
    for (const auto& row : equations) {
        if (row.size() != cols) throw std::invalid_argument("ragged equation matrix");
        ech.insert(row);
    }
    std::vector<bool> isPivot(cols, false);
    for (size_t p : ech.pivots) isPivot[p] = true;

    std::vector<RatVector> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (isPivot[free]) continue;
        RatVector v(cols, RatFn(0));
        v[free] = RatFn(1);
        for (size_t k = 0; k < ech.rows.size(); ++k)
            v[ech.pivots[k]] = -ech.rows[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix invertRatMatrix(RatMatrix a) {
    size_t m = a.size();
    RatMatrix inv(m, RatVector(m, RatFn(0)));
    for (size_t r = 0; r < m; ++r) inv[r][r] = RatFn(1);
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        while (piv < m && a[piv][col].isZero()) ++piv;
        if (piv == m) throw std::logic_error("matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        RatFn f = a[col][col].inverse();
        for (size_t c = 0; c < m; ++c) {
            a[col][c] = a[col][c] * f;
            inv[col][c] = inv[col][c] * f;
        }
        for (size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col].isZero()) continue;
            RatFn g = a[r][col];
            for (size_t c = 0; c < m; ++c) {
                a[r][c] = a[r][c] - g * a[col][c];
                inv[r][c] = inv[r][c] - g * inv[col][c];
            }
        }
    }
    return inv;
}

std::vector<std::vector<TauScalar>> invertTauMatrix(std::vector<std::vector<TauScalar>> a) {
    size_t m = a.size();
    std::vector<std::vector<TauScalar>> inv(m, std::vector<TauScalar>(m, TauScalar(0)));
    for (size_t r = 0; r < m; ++r) inv[r][r] = TauScalar(1);
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        while (piv < m && !a[piv][col].isInvertible()) ++piv;
        if (piv == m) throw std::logic_error("matrix is singular over the tau ring");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        TauScalar f = a[col][col].tryInvert();
        for (size_t c = 0; c < m; ++c) {
            a[col][c] = a[col][c] * f;
            inv[col][c] = inv[col][c] * f;
        }
        for (size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col].isZero()) continue;
            TauScalar g = a[r][col];
            for (size_t c = 0; c < m; ++c) {
                a[r][c] = a[r][c] - g * a[col][c];
                inv[r][c] = inv[r][c] - g * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace covknot
