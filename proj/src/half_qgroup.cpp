#include "covknot/half_qgroup.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "covknot/linalg.hpp"

namespace covknot {

// ---- FElement helpers ---------------------------------------------------------

static void fAccum(FElement& x, const Word& w, const TauScalar& c) {
    if (c.isZero()) return;
    auto it = x.find(w);
    if (it == x.end()) {
        x.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.isZero()) x.erase(it);
    }
}

FElement fScale(const TauScalar& c, const FElement& x) {
    FElement r;
    if (c.isZero()) return r;
    for (auto& [w, a] : x) fAccum(r, w, c * a);
    return r;
}

FElement fAdd(const FElement& x, const FElement& y) {
    FElement r = x;
    for (auto& [w, a] : y) fAccum(r, w, a);
    return r;
}

FElement fConcat(const FElement& x, const FElement& y) {
    FElement r;
    for (auto& [w, a] : x) {
        for (auto& [v, b] : y) {
            Word wv = w;
            wv.insert(wv.end(), v.begin(), v.end());
            fAccum(r, wv, a * b);
        }
    }
    return r;
}

// ---- HalfAlgebra ---------------------------------------------------------------

RootVector HalfAlgebra::grade(const Word& w) const {
    RootVector nu = RootVector::zero(cd.rank());
    for (int i : w) nu.m[i - 1] += 1;
    return nu;
}

int HalfAlgebra::wordParity(const Word& w) const { return grade(w).parity(); }

FElement HalfAlgebra::irDerivation(int i, const FElement& x) const {
    FElement r;
    for (auto& [w, c] : x) {
        // prefix factor pi^{p(i)p(w_r)} q^{i . w_r} accumulated left to right
        TauScalar pref(1);
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k] == i) {
                Word rest;
                rest.reserve(w.size() - 1);
                rest.insert(rest.end(), w.begin(), w.begin() + k);
                rest.insert(rest.end(), w.begin() + k + 1, w.end());
                fAccum(r, rest, c * pref);
            }
            pref = pref * piPow((long long)cd.parity(i) * cd.parity(w[k])) *
                   TauScalar::q(cd.dot(i, w[k]));
        }
    }
    return r;
}

TauScalar HalfAlgebra::thetaNorm(int i) const {
    TauScalar x = piPow(cd.d(i)) * TauScalar::q(-2 * cd.d(i));
    return (TauScalar(1) - x).tryInvert();
}

// (x, y) scaled by prod_i (1 - pi_i q_i^{-2})^{nu_i}; the theta norm cancels
// one clearing factor per consumed letter, so the recursion stays polynomial
TauScalar HalfAlgebra::clearedForm(const Word& x, const Word& y) const {
    if (x.size() != y.size() || grade(x) != grade(y)) return TauScalar(0);
    if (x.empty()) return TauScalar(1);
    auto key = std::make_pair(x, y);
    auto it = formMemo.find(key);
    if (it != formMemo.end()) return it->second;

    int i = x.front();
    Word rest(x.begin() + 1, x.end());
    FElement dy = irDerivation(i, FElement{{y, TauScalar(1)}});
    TauScalar acc(0);
    for (auto& [z, c] : dy) acc += c * clearedForm(rest, z);
    formMemo.emplace(std::move(key), acc);
    return acc;
}

TauScalar HalfAlgebra::gradeDenominator(const RootVector& nu) const {
    TauScalar d(1);
    for (int i = 1; i <= cd.rank(); ++i) {
        TauScalar f = TauScalar(1) - piPow(cd.d(i)) * TauScalar::q(-2 * cd.d(i));
        d = d * f.pow(nu.m[i - 1]);
    }
    return d;
}

TauScalar HalfAlgebra::wordForm(const Word& x, const Word& y) const {
    TauScalar c = clearedForm(x, y);
    if (c.isZero()) return c;
    return c * gradeDenominator(grade(x)).tryInvert();
}

TauScalar HalfAlgebra::bilinearForm(const FElement& x, const FElement& y) const {
    TauScalar acc(0);
    for (auto& [w, a] : x)
        for (auto& [v, b] : y) acc += a * b * wordForm(w, v);
    return acc;
}

FElement HalfAlgebra::sigma(const FElement& x) const {
    FElement r;
    for (auto& [w, c] : x) {
        Word rw(w.rbegin(), w.rend());
        fAccum(r, rw, c);
    }
    return r;
}

FElement HalfAlgebra::serreElement(int i, int j) const {
    if (i == j) throw std::invalid_argument("Serre element needs distinct nodes");
    int b = cd.serreBound(i, j);
    int pi = cd.parity(i), pj = cd.parity(j);
    FElement ti{{Word{i}, TauScalar(1)}};
    FElement tj{{Word{j}, TauScalar(1)}};
    FElement acc;
    for (int k = 0; k <= b; ++k) {
        long long piExp = (long long)k * (k - 1) / 2 * pi + (long long)k * pi * pj;
        TauScalar c = piPow(piExp) * qBinom(b, k, cd.d(i));
        if (k % 2) c = -c;
        FElement term{{Word{}, c}};
        for (int r = 0; r < b - k; ++r) term = fConcat(term, ti);
        term = fConcat(term, tj);
        for (int r = 0; r < k; ++r) term = fConcat(term, ti);
        acc = fAdd(acc, term);
    }
    return acc;
}

bool HalfAlgebra::serreCheck(int i, int j) const {
    FElement s = serreElement(i, j);
    RootVector nu = grade(s.begin()->first);
    for (const Word& w : allWords(nu)) {
        TauScalar v(0);
        for (auto& [sw, c] : s) v += c * clearedForm(sw, w);
        if (!v.isZero()) return false;
    }
    return true;
}

std::vector<Word> HalfAlgebra::allWords(const RootVector& nu) const {
    Word letters;
    for (int i = 1; i <= cd.rank(); ++i) {
        if (nu.m[i - 1] < 0) throw std::invalid_argument("grade must be nonnegative");
        letters.insert(letters.end(), (size_t)nu.m[i - 1], i);
    }
    std::vector<Word> out;
    out.push_back(letters);
    while (std::next_permutation(letters.begin(), letters.end())) out.push_back(letters);
    return out;
}

long long HalfAlgebra::dimension(const RootVector& nu) const {
    for (long long v : nu.m)
        if (v < 0) return 0;
    auto it = dimMemo.find(nu.m);
    if (it != dimMemo.end()) return it->second;

    int n = cd.rank();
    // positive roots in simple-root coordinates, via eps_i = alpha_i + ... + alpha_n
    std::vector<std::vector<long long>> even, odd;
    auto seg = [&](int from, int to, long long mult) {
        std::vector<long long> v(n, 0);
        for (int s = from; s <= to; ++s) v[s - 1] = mult;
        return v;
    };
    for (int i = 1; i <= n; ++i) {
        odd.push_back(seg(i, n, 1));  // eps_i
        even.push_back(seg(i, n, 2));  // 2 eps_i
        for (int j = i + 1; j <= n; ++j) {
            even.push_back(seg(i, j - 1, 1));  // eps_i - eps_j
            auto v = seg(i, j - 1, 1);         // eps_i + eps_j
            for (int s = j; s <= n; ++s) v[s - 1] = 2;
            even.push_back(v);
        }
    }
    // count multiset solutions: odd roots used at most once
    std::function<long long(size_t, std::vector<long long>&)> evenCount =
        [&](size_t idx, std::vector<long long>& rem) -> long long {
        bool zero = true;
        for (long long v : rem) {
            if (v < 0) return 0;
            if (v) zero = false;
        }
        if (idx == even.size()) return zero ? 1 : 0;
        long long total = 0;
        int steps = 0;
        while (true) {
            total += evenCount(idx + 1, rem);
            bool fits = true;
            for (int k = 0; k < n; ++k) {
                rem[k] -= even[idx][k];
                if (rem[k] < 0) fits = false;
            }
            ++steps;
            if (!fits) break;
        }
        for (int k = 0; k < n; ++k) rem[k] += steps * even[idx][k];
        return total;
    };
    long long count = 0;
    for (size_t mask = 0; mask < (size_t(1) << odd.size()); ++mask) {
        std::vector<long long> rem = nu.m;
        bool ok = true;
        for (size_t k = 0; k < odd.size(); ++k) {
            if (mask & (size_t(1) << k))
                for (int c = 0; c < n; ++c) {
                    rem[c] -= odd[k][c];
                    if (rem[c] < 0) ok = false;
                }
        }
        if (ok) count += evenCount(0, rem);
    }
    dimMemo.emplace(nu.m, count);
    return count;
}

// modular row reduction used for pivot selection at an evaluation point

namespace {

constexpr unsigned long long kModPrime = 2305843009213693951ull;  // 2^61 - 1

unsigned long long mulMod(unsigned long long a, unsigned long long b) {
    return (unsigned long long)((__uint128_t)a * b % kModPrime);
}

unsigned long long powMod(unsigned long long a, long long e) {
    bool invert = e < 0;
    unsigned long long r = 1, b = a;
    unsigned long long exp = (unsigned long long)(invert ? -e : e);
    while (exp) {
        if (exp & 1) r = mulMod(r, b);
        b = mulMod(b, b);
        exp >>= 1;
    }
    if (invert) return powMod(r, (long long)(kModPrime - 2));
    return r;
}

struct ModEchelon {
    std::vector<std::vector<unsigned long long>> rows;
    std::vector<size_t> pivots;

    // reduces in place; returns the column of the surviving pivot or npos
    size_t reduce(std::vector<unsigned long long>& r) const {
        for (size_t k = 0; k < rows.size(); ++k) {
            unsigned long long lead = r[pivots[k]];
            if (!lead) continue;
            for (size_t c = 0; c < r.size(); ++c) {
                unsigned long long s = mulMod(lead, rows[k][c]);
                r[c] = (r[c] + kModPrime - s) % kModPrime;
            }
        }
        for (size_t c = 0; c < r.size(); ++c)
            if (r[c]) return c;
        return (size_t)-1;
    }

    void commit(std::vector<unsigned long long> r, size_t pivot) {
        unsigned long long inv = powMod(r[pivot], (long long)(kModPrime - 2));
        for (auto& v : r) v = mulMod(v, inv);
        pivots.push_back(pivot);
        rows.push_back(std::move(r));
    }
};

bool modNonsingular(std::vector<std::vector<unsigned long long>> a) {
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && !a[piv][col]) ++piv;
        if (piv == n) return false;
        std::swap(a[piv], a[col]);
        unsigned long long inv = powMod(a[col][col], (long long)(kModPrime - 2));
        for (size_t r = col + 1; r < n; ++r) {
            if (!a[r][col]) continue;
            unsigned long long f = mulMod(a[r][col], inv);
            for (size_t c = col; c < n; ++c) {
                unsigned long long s = mulMod(f, a[col][c]);
                a[r][c] = (a[r][c] + kModPrime - s) % kModPrime;
            }
        }
    }
    return true;
}

}  // namespace

unsigned long long HalfAlgebra::clearedFormMod(int piSign, const Word& x, const Word& y,
                                               unsigned long long q0) const {
    if (x.size() != y.size() || grade(x) != grade(y)) return 0;
    if (x.empty()) return 1;
    auto key = std::make_tuple(piSign, x, y);
    auto it = modMemo.find(key);
    if (it != modMemo.end()) return it->second;

    int i = x.front();
    Word rest(x.begin() + 1, x.end());
    unsigned long long acc = 0, pref = 1;
    for (size_t k = 0; k < y.size(); ++k) {
        if (y[k] == i) {
            Word z;
            z.reserve(y.size() - 1);
            z.insert(z.end(), y.begin(), y.begin() + k);
            z.insert(z.end(), y.begin() + k + 1, y.end());
            acc = (acc + mulMod(pref, clearedFormMod(piSign, rest, z, q0))) % kModPrime;
        }
        unsigned long long f = powMod(q0, cd.dot(i, y[k]));
        if (piSign && cd.parity(i) && cd.parity(y[k])) f = kModPrime - f;
        pref = mulMod(pref, f);
    }
    modMemo.emplace(std::move(key), acc);
    return acc;
}

const std::vector<Word>& HalfAlgebra::gradeWords(const RootVector& nu) const {
    auto it = wordsMemo.find(nu.m);
    if (it != wordsMemo.end()) return it->second;

    std::vector<Word> words = allWords(nu);
    size_t m = words.size();
    size_t dim = (size_t)dimension(nu);

    // Select lex-first pivot words by modular elimination of the cleared Gram
    // at a sample point.  The selection is heuristic; the certificate is not:
    // the count matches the graded dimension, and a nonzero modular
    // determinant of the cleared block witnesses exact invertibility (the
    // cleared entries are ring elements, so a nonzero evaluation is final).
    const unsigned long long samples[] = {7, 11, 13, 19};
    std::vector<size_t> chosen;
    for (unsigned long long q0 : samples) {
        if (q0 != modMemoQ0) {
            modMemo.clear();  // memo entries are keyed without q0
            modMemoQ0 = q0;
        }
        chosen.clear();
        std::array<ModEchelon, 2> ech;  // one per pi sign
        for (size_t r = 0; r < m && chosen.size() < dim; ++r) {
            std::array<std::vector<unsigned long long>, 2> rows;
            std::array<size_t, 2> piv{};
            bool ok = true;
            for (int s = 0; s < 2 && ok; ++s) {
                rows[s].resize(m);
                for (size_t c = 0; c < m; ++c)
                    rows[s][c] = clearedFormMod(s, words[r], words[c], q0);
                piv[s] = ech[s].reduce(rows[s]);
                ok = piv[s] != (size_t)-1;
            }
            if (!ok) continue;
            for (int s = 0; s < 2; ++s) ech[s].commit(std::move(rows[s]), piv[s]);
            chosen.push_back(r);
        }
        if (chosen.size() != dim) continue;
        bool invertible = true;
        for (int s = 0; s < 2 && invertible; ++s) {
            std::vector<std::vector<unsigned long long>> block(
                dim, std::vector<unsigned long long>(dim));
            for (size_t r = 0; r < dim; ++r)
                for (size_t c = 0; c < dim; ++c)
                    block[r][c] = clearedFormMod(s, words[chosen[r]], words[chosen[c]], q0);
            invertible = modNonsingular(std::move(block));
        }
        if (!invertible) continue;
        std::vector<Word> picked;
        picked.reserve(dim);
        for (size_t r : chosen) picked.push_back(words[r]);
        return wordsMemo.emplace(nu.m, std::move(picked)).first->second;
    }
    throw std::logic_error("no certified pivot basis at this grade");
}

const HalfAlgebra::GradeBasis& HalfAlgebra::gradeBasis(const RootVector& nu) const {
    auto it = basisMemo.find(nu.m);
    if (it != basisMemo.end()) return it->second;

    GradeBasis gb;
    gb.words = gradeWords(nu);
    size_t dim = gb.words.size();
    std::vector<std::vector<TauScalar>> sub(dim, std::vector<TauScalar>(dim));
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c <= r; ++c)
            sub[c][r] = sub[r][c] = clearedForm(gb.words[r], gb.words[c]);
    sub = invertTauMatrix(std::move(sub));  // cannot fail: block is certified

    // inverse of the true Gram block = denominator * inverse of the cleared block
    TauScalar den = gradeDenominator(nu);
    for (size_t dm = 0; dm < dim; ++dm) {
        FElement dual;
        for (size_t j = 0; j < dim; ++j) fAccum(dual, gb.words[j], den * sub[j][dm]);
        gb.duals.push_back(std::move(dual));
    }
    return basisMemo.emplace(nu.m, std::move(gb)).first->second;
}

}  // namespace covknot
