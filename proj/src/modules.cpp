#include "covknot/modules.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

#include "covknot/linalg.hpp"

namespace covknot {

// ---- sparse vectors -------------------------------------------------------

void accumulate(SparseVec& v, size_t idx, const TauScalar& c) {
    if (c.isZero()) return;
    auto it = v.find(idx);
    if (it == v.end()) {
        v.emplace(idx, c);
    } else {
        it->second += c;
        if (it->second.isZero()) v.erase(it);
    }
}

SparseVec scaleVec(const TauScalar& c, const SparseVec& v) {
    SparseVec out;
    for (const auto& [idx, x] : v) accumulate(out, idx, c * x);
    return out;
}

SparseVec addVec(const SparseVec& a, const SparseVec& b) {
    SparseVec out = a;
    for (const auto& [idx, x] : b) accumulate(out, idx, x);
    return out;
}

// ---- Module ---------------------------------------------------------------

Module::Module(CartanDatum datum, std::vector<BigWeight> weights,
               std::vector<std::vector<SparseVec>> eColumns,
               std::vector<std::vector<SparseVec>> fColumns)
    : cd(std::move(datum)), wts(std::move(weights)),
      eAct(std::move(eColumns)), fAct(std::move(fColumns)) {
    size_t d = wts.size();
    if (eAct.size() != (size_t)cd.rank() || fAct.size() != (size_t)cd.rank())
        throw std::logic_error("generator table does not match the rank");
    for (int i = 0; i < cd.rank(); ++i)
        if (eAct[i].size() != d || fAct[i].size() != d)
            throw std::logic_error("action table does not match the basis");
}

SparseVec Module::applyE(int i, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [l, c] : v)
        for (const auto& [r, x] : eColumn(i, l)) accumulate(out, r, c * x);
    return out;
}

SparseVec Module::applyF(int i, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [l, c] : v)
        for (const auto& [r, x] : fColumn(i, l)) accumulate(out, r, c * x);
    return out;
}

// ---- simple modules ---------------------------------------------------------

namespace {

// Per-grade state of the truncated Verma module.  Verma coordinates at grade
// nu are the pivot words of f_nu; the maximal-submodule rows and the
// quotient-coordinate extractors are kept one tau component at a time.
struct GradeState {
    RootVector nu;
    size_t verma = 0;               // dim f_nu
    std::array<RatEchelon, 4> sub;  // echelon of the maximal submodule
    std::vector<size_t> chosen;     // representative word indices, common to all components
    std::array<RatMatrix, 4> quot;  // |chosen| x verma extractor of quotient coordinates
    size_t offset = 0;              // first global basis index
    // E_i / F_i in Verma coordinates, one column per pivot word of the source
    // grade; E_i lands one grade up, F_i lands at this grade
    std::vector<std::vector<std::vector<TauScalar>>> eVerma;
    std::vector<std::vector<std::vector<TauScalar>>> fVerma;
    // pivot-basis coordinates of single words at this grade
    std::map<Word, std::vector<TauScalar>> coords;
};

std::vector<RatFn> componentOf(const std::vector<TauScalar>& v, int k) {
    std::vector<RatFn> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.component(k));
    return out;
}

// columns-times-vector over the tau ring
std::vector<TauScalar> applyColumns(const std::vector<std::vector<TauScalar>>& cols,
                                    const std::vector<TauScalar>& v, size_t rows) {
    std::vector<TauScalar> out(rows, TauScalar(0));
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].isZero()) continue;
        for (size_t r = 0; r < rows; ++r) out[r] += cols[k][r] * v[k];
    }
    return out;
}

// coefficients c with sum_j c_j cols[j] = t, or nullopt when t is outside the
// span; the columns are independent by construction
std::optional<RatVector> solveColumns(const std::vector<RatVector>& cols, const RatVector& t) {
    size_t r = cols.size(), b = t.size();
    RatMatrix m(b, RatVector(r + 1, RatFn(0)));
    for (size_t j = 0; j < r; ++j)
        for (size_t row = 0; row < b; ++row) m[row][j] = cols[j][row];
    for (size_t row = 0; row < b; ++row) m[row][r] = t[row];
    size_t done = 0;
    for (size_t j = 0; j < r; ++j) {
        size_t p = done;
        while (p < b && m[p][j].isZero()) ++p;
        if (p == b) throw std::logic_error("dependent basis columns");
        std::swap(m[p], m[done]);
        RatFn inv = m[done][j].inverse();
        for (size_t c = j; c <= r; ++c) m[done][c] = m[done][c] * inv;
        for (size_t row = 0; row < b; ++row) {
            if (row == done || m[row][j].isZero()) continue;
            RatFn g = m[row][j];
            for (size_t c = j; c <= r; ++c) m[row][c] = m[row][c] - g * m[done][c];
        }
        ++done;
    }
    for (size_t row = done; row < b; ++row)
        if (!m[row][r].isZero()) return std::nullopt;
    RatVector out(r);
    for (size_t j = 0; j < r; ++j) out[j] = m[j][r];
    return out;
}

// weight block of the ambient tensor: dense restriction layout, the span
// discovered by the F-closure, and the common basis chosen inside it
struct WeightBlock {
    std::vector<size_t> flats;      // ambient indices carrying this weight
    std::map<size_t, size_t> pos;   // ambient index -> dense position
    std::array<RatEchelon, 4> span;
    std::array<RatEchelon, 4> pick;
    std::vector<size_t> members;    // global basis indices living here
    std::array<std::vector<RatVector>, 4> dense;  // chosen basis, per component
};

}  // namespace

// Simple module of composite highest weight, realized as the cyclic
// submodule generated by the top vector of V(lambda - omega_r) (x) V(omega_r).
// All linear algebra happens inside small weight blocks of the ambient
// tensor, where the scalars stay far tamer than in deep Verma grades; at
// generic q complete reducibility makes the cyclic module simple.
static ModulePtr extractSimple(const HalfAlgebra& f, const Weight& lambda, int r) {
    const CartanDatum& cd = f.datum();
    int n = cd.rank();
    Weight mu = lambda;
    mu.a[r - 1] -= 1;
    Weight omega = Weight::zero(n);
    omega.a[r - 1] = 1;
    ModulePtr big = tensor(constructSimple(f, mu), constructSimple(f, omega));
    if (!(big->weight(0).wt == lambda))
        throw std::logic_error("tensor top vector does not carry the requested weight");

    std::map<std::vector<long long>, WeightBlock> blocks;
    auto blockOf = [&](const Weight& wt) -> WeightBlock& {
        auto it = blocks.find(wt.a);
        if (it != blocks.end()) return it->second;
        WeightBlock blk;
        int eps = -1;
        for (size_t l = 0; l < big->dim(); ++l) {
            if (!(big->weight(l).wt == wt)) continue;
            if (eps < 0) {
                eps = big->weight(l).eps;
            } else if (eps != big->weight(l).eps) {
                throw std::logic_error("mixed parity inside a tensor weight space");
            }
            blk.pos.emplace(l, blk.flats.size());
            blk.flats.push_back(l);
        }
        return blocks.emplace(wt.a, std::move(blk)).first->second;
    };
    auto restrictTo = [](const WeightBlock& blk, const SparseVec& v, int k) {
        RatVector out(blk.flats.size(), RatFn(0));
        for (const auto& [l, c] : v) out[blk.pos.at(l)] = c.component(k);
        return out;
    };

    // F-closure from the top vector; a candidate joins the span when it is
    // independent in at least one tau component
    std::vector<SparseVec> cands;
    std::vector<WeightBlock*> candBlock;
    auto discover = [&](SparseVec v) {
        WeightBlock& blk = blockOf(big->weight(v.begin()->first).wt);
        bool fresh = false;
        for (int k = 0; k < 4; ++k)
            if (blk.span[k].insert(restrictTo(blk, v, k))) fresh = true;
        if (!fresh) return;
        cands.push_back(std::move(v));
        candBlock.push_back(&blk);
    };
    discover(SparseVec{{0, TauScalar(1)}});
    for (size_t idx = 0; idx < cands.size(); ++idx)
        for (int i = 1; i <= n; ++i) {
            SparseVec w = big->applyF(i, cands[idx]);
            if (!w.empty()) discover(std::move(w));
        }

    // common basis: lex-first candidates independent in every component at
    // once; discovery order keeps heights nondecreasing and the top first
    std::vector<size_t> chosen;
    for (size_t idx = 0; idx < cands.size(); ++idx) {
        WeightBlock& blk = *candBlock[idx];
        std::array<RatVector, 4> restr;
        bool all = true;
        for (int k = 0; k < 4 && all; ++k) {
            restr[k] = restrictTo(blk, cands[idx], k);
            RatVector res = blk.pick[k].reduce(restr[k]);
            all = std::any_of(res.begin(), res.end(),
                              [](const RatFn& x) { return !x.isZero(); });
        }
        if (!all) continue;
        for (int k = 0; k < 4; ++k) {
            blk.pick[k].insert(restr[k]);
            blk.dense[k].push_back(std::move(restr[k]));
        }
        blk.members.push_back(chosen.size());
        chosen.push_back(idx);
    }
    for (const auto& [key, blk] : blocks) {
        size_t rank = blk.span[0].rank();
        for (int k = 1; k < 4; ++k)
            if (blk.span[k].rank() != rank)
                throw std::logic_error("cyclic submodule differs between tau components");
        if (blk.members.size() != rank)
            throw std::logic_error("no common basis across tau components");
    }

    // expansions of the generator images against the chosen basis
    auto expand = [&](const SparseVec& w) {
        const WeightBlock& blk = blocks.at(big->weight(w.begin()->first).wt.a);
        std::array<RatVector, 4> comps;
        for (int k = 0; k < 4; ++k) {
            auto c = solveColumns(blk.dense[k], restrictTo(blk, w, k));
            if (!c) throw std::logic_error("generator image escapes the cyclic submodule");
            comps[k] = std::move(*c);
        }
        SparseVec out;
        for (size_t j = 0; j < blk.members.size(); ++j) {
            std::array<RatFn, 4> entry;
            for (int k = 0; k < 4; ++k) entry[k] = comps[k][j];
            accumulate(out, blk.members[j], TauScalar::fromComponents(entry));
        }
        return out;
    };

    size_t total = chosen.size();
    std::vector<BigWeight> wts;
    wts.reserve(total);
    for (size_t b = 0; b < total; ++b)
        wts.push_back(big->weight(cands[chosen[b]].begin()->first));
    std::vector<std::vector<SparseVec>> eCols(n, std::vector<SparseVec>(total));
    std::vector<std::vector<SparseVec>> fCols(n, std::vector<SparseVec>(total));
    for (size_t b = 0; b < total; ++b) {
        const SparseVec& v = cands[chosen[b]];
        for (int i = 1; i <= n; ++i) {
            SparseVec we = big->applyE(i, v);
            if (!we.empty()) eCols[i - 1][b] = expand(we);
            SparseVec wf = big->applyF(i, v);
            if (!wf.empty()) fCols[i - 1][b] = expand(wf);
        }
    }
    return std::make_shared<Module>(cd, std::move(wts), std::move(eCols), std::move(fCols));
}

ModulePtr constructSimple(const HalfAlgebra& f, const Weight& lambda) {
    const CartanDatum& cd = f.datum();
    int n = cd.rank();
    if (lambda.rank() != n) throw std::invalid_argument("weight rank mismatch");
    for (long long a : lambda.a)
        if (a < 0) throw std::invalid_argument("highest weight must be dominant");

    // composite weights peel off a fundamental and extract from the tensor;
    // the Verma route below stays for rank one and the fundamental boxes
    long long sum = 0;
    for (long long a : lambda.a) sum += a;
    if (n >= 2 && sum >= 2) {
        int r = n;
        while (lambda.a[r - 1] == 0) --r;
        return extractSimple(f, lambda, r);
    }

    // grade box: 0 <= nu <= decompose(2 lambda); every weight of the simple
    // module lies in the box, so F-images off the edge die in the quotient
    RootVector box = *rootDecompose(cd, lambda * 2);
    std::vector<GradeState> grades;
    std::vector<long long> cur(n, 0);
    for (;;) {
        GradeState gs;
        gs.nu = RootVector(cur);
        grades.push_back(std::move(gs));
        int i = 0;
        while (i < n && cur[i] == box.m[i]) cur[i++] = 0;
        if (i == n) break;
        cur[i] += 1;
    }
    std::sort(grades.begin(), grades.end(), [](const GradeState& a, const GradeState& b) {
        return std::make_pair(a.nu.height(), a.nu.m) < std::make_pair(b.nu.height(), b.nu.m);
    });
    std::map<std::vector<long long>, size_t> gradeIndex;
    for (size_t g = 0; g < grades.size(); ++g) gradeIndex[grades[g].nu.m] = g;

    // pivot-basis coordinates of a single word, paired once against the dual
    // basis of its grade and cached
    auto wordCoords = [&](GradeState& gs, const Word& w) -> const std::vector<TauScalar>& {
        auto it = gs.coords.find(w);
        if (it != gs.coords.end()) return it->second;
        const auto& gb = f.gradeBasis(gs.nu);
        std::vector<TauScalar> c;
        c.reserve(gb.duals.size());
        FElement x{{w, TauScalar(1)}};
        for (const auto& dual : gb.duals) c.push_back(f.bilinearForm(x, dual));
        return gs.coords.emplace(w, std::move(c)).first->second;
    };

    for (auto& gs : grades) {
        const auto& words = f.gradeWords(gs.nu);
        gs.verma = words.size();
        gs.eVerma.assign(n, {});
        gs.fVerma.assign(n, {});
        for (size_t k = 0; k < gs.verma; ++k) {
            std::vector<TauScalar> unit(gs.verma, TauScalar(0));
            unit[k] = TauScalar(1);
            gs.coords.emplace(words[k], std::move(unit));
        }

        // F_j columns: prepend j to each pivot word one grade down
        for (int j = 1; j <= n; ++j) {
            if (gs.nu.m[j - 1] == 0) continue;
            RootVector src = gs.nu - RootVector::simple(j, n);
            const auto& srcWords = f.gradeWords(src);
            auto& cols = gs.fVerma[j - 1];
            cols.reserve(srcWords.size());
            for (const auto& w : srcWords) {
                Word jw;
                jw.reserve(w.size() + 1);
                jw.push_back(j);
                jw.insert(jw.end(), w.begin(), w.end());
                cols.push_back(wordCoords(gs, jw));
            }
        }

        // E_i columns by the commutator, one grade at a time:
        // E_i(F_j x v) = pi^{p(i)p(j)} F_j E_i(x v) + delta_ij [<i, lambda - iota(|x|)>]_i (x v)
        for (int i = 1; i <= n; ++i) {
            if (gs.nu.m[i - 1] == 0) continue;
            const GradeState& up = grades[gradeIndex.at((gs.nu - RootVector::simple(i, n)).m)];
            auto& cols = gs.eVerma[i - 1];
            cols.reserve(gs.verma);
            for (const auto& w : words) {
                int j = w.front();
                Word rest(w.begin() + 1, w.end());
                GradeState& mid = grades[gradeIndex.at((gs.nu - RootVector::simple(j, n)).m)];
                std::vector<TauScalar> restC = wordCoords(mid, rest);
                std::vector<TauScalar> col(up.verma, TauScalar(0));
                if (mid.nu.m[i - 1] > 0) {
                    size_t lowDim = grades[gradeIndex.at(
                        (mid.nu - RootVector::simple(i, n)).m)].verma;
                    auto low = applyColumns(mid.eVerma[i - 1], restC, lowDim);
                    col = applyColumns(up.fVerma[j - 1], low, up.verma);
                    TauScalar sgn = piPow((long long)cd.parity(i) * cd.parity(j));
                    for (auto& x : col) x = sgn * x;
                }
                if (i == j) {
                    Weight mu = lambda - embedRoot(cd, mid.nu);
                    TauScalar bracket = qInt(mu.a[i - 1], cd.d(i));
                    for (size_t r = 0; r < up.verma; ++r) col[r] += bracket * restC[r];
                }
                cols.push_back(std::move(col));
            }
        }

        // maximal submodule: v with E_i v inside the submodule one level up
        RatMatrix equations[4];
        for (int i = 1; i <= n; ++i) {
            if (gs.nu.m[i - 1] == 0) continue;
            RootVector up = gs.nu - RootVector::simple(i, n);
            const GradeState& target = grades[gradeIndex.at(up.m)];
            const auto& cols = gs.eVerma[i - 1];
            for (int k = 0; k < 4; ++k) {
                std::vector<RatVector> reduced;
                reduced.reserve(gs.verma);
                for (const auto& col : cols)
                    reduced.push_back(target.sub[k].reduce(componentOf(col, k)));
                for (size_t r = 0; r < target.verma; ++r) {
                    RatVector eq(gs.verma);
                    for (size_t j = 0; j < gs.verma; ++j) eq[j] = reduced[j][r];
                    equations[k].push_back(std::move(eq));
                }
            }
        }

        size_t subDim = 0;
        if (gs.nu.height() > 0) {
            for (int k = 0; k < 4; ++k) {
                auto rows = kernelBasis(equations[k], gs.verma);
                if (k == 0) {
                    subDim = rows.size();
                } else if (rows.size() != subDim) {
                    throw std::logic_error("maximal submodule differs between tau components");
                }
                for (auto& r : rows) gs.sub[k].insert(std::move(r));
            }
        }

        // common lex-first complement of the submodule
        size_t dq = gs.verma - subDim;
        std::array<RatEchelon, 4> sel = gs.sub;
        for (size_t j = 0; j < gs.verma && gs.chosen.size() < dq; ++j) {
            RatVector e(gs.verma, RatFn(0));
            e[j] = RatFn(1);
            bool indep = true;
            for (int k = 0; k < 4 && indep; ++k) {
                RatVector r = sel[k].reduce(e);
                indep = std::any_of(r.begin(), r.end(), [](const RatFn& x) { return !x.isZero(); });
            }
            if (!indep) continue;
            for (int k = 0; k < 4; ++k) sel[k].insert(e);
            gs.chosen.push_back(j);
        }
        if (gs.chosen.size() != dq)
            throw std::logic_error("no common complement across tau components");

        // quotient coordinates: top rows of [e_chosen | submodule]^{-1}
        if (dq > 0) {
            for (int k = 0; k < 4; ++k) {
                RatMatrix a(gs.verma, RatVector(gs.verma, RatFn(0)));
                for (size_t c = 0; c < dq; ++c) a[gs.chosen[c]][c] = RatFn(1);
                for (size_t c = dq; c < gs.verma; ++c)
                    for (size_t r = 0; r < gs.verma; ++r)
                        a[r][c] = gs.sub[k].rows[c - dq][r];
                RatMatrix inv = invertRatMatrix(std::move(a));
                gs.quot[k].assign(inv.begin(), inv.begin() + dq);
            }
        }
    }

    // global basis: grades in height order, chosen words in lex order
    size_t total = 0;
    for (auto& gs : grades) {
        gs.offset = total;
        total += gs.chosen.size();
    }

    auto toQuotient = [&](const GradeState& target, const std::vector<TauScalar>& col) {
        size_t dq = target.chosen.size();
        std::vector<TauScalar> out;
        out.reserve(dq);
        for (size_t r = 0; r < dq; ++r) {
            std::array<RatFn, 4> comps;
            for (int k = 0; k < 4; ++k) {
                RatFn acc(0);
                for (size_t j = 0; j < target.verma; ++j) {
                    const RatFn& x = col[j].component(k);
                    if (!x.isZero()) acc = acc + target.quot[k][r][j] * x;
                }
                comps[k] = acc;
            }
            out.push_back(TauScalar::fromComponents(comps));
        }
        return out;
    };

    std::vector<BigWeight> wts(total);
    std::vector<std::vector<SparseVec>> eCols(n, std::vector<SparseVec>(total));
    std::vector<std::vector<SparseVec>> fCols(n, std::vector<SparseVec>(total));
    for (const auto& gs : grades) {
        if (gs.chosen.empty()) continue;
        for (size_t c = 0; c < gs.chosen.size(); ++c) {
            size_t l = gs.offset + c;
            wts[l] = BigWeight(lambda - embedRoot(cd, gs.nu), gs.nu.parity());
            for (int i = 1; i <= n; ++i) {
                if (gs.nu.m[i - 1] > 0) {
                    RootVector up = gs.nu - RootVector::simple(i, n);
                    const GradeState& target = grades[gradeIndex.at(up.m)];
                    auto q = toQuotient(target, gs.eVerma[i - 1][gs.chosen[c]]);
                    for (size_t r = 0; r < q.size(); ++r)
                        accumulate(eCols[i - 1][l], target.offset + r, q[r]);
                }
                RootVector down = gs.nu + RootVector::simple(i, n);
                auto downIt = gradeIndex.find(down.m);
                if (downIt == gradeIndex.end()) continue;  // outside the box: dies in the quotient
                const GradeState& target = grades[downIt->second];
                if (target.chosen.empty()) continue;
                auto q = toQuotient(target, target.fVerma[i - 1][gs.chosen[c]]);
                for (size_t r = 0; r < q.size(); ++r)
                    accumulate(fCols[i - 1][l], target.offset + r, q[r]);
            }
        }
    }

    return std::make_shared<Module>(cd, std::move(wts), std::move(eCols), std::move(fCols));
}

// ---- dual and parity shift --------------------------------------------------

ModulePtr dualModule(const ModulePtr& v) {
    const CartanDatum& cd = v->datum();
    int n = cd.rank();
    size_t d = v->dim();

    std::vector<BigWeight> wts;
    wts.reserve(d);
    for (size_t l = 0; l < d; ++l) wts.push_back(BigWeight(-v->weight(l).wt, v->parity(l)));

    std::vector<std::vector<SparseVec>> eCols(n, std::vector<SparseVec>(d));
    std::vector<std::vector<SparseVec>> fCols(n, std::vector<SparseVec>(d));
    for (int i = 1; i <= n; ++i) {
        for (size_t k = 0; k < d; ++k) {
            // S(E_i) = -J~_i K~_i^{-1} E_i scales by the weight of E_i b_k
            for (const auto& [l, c] : v->eColumn(i, k)) {
                long long x = cd.d(i) * (v->weight(k).wt.a[i - 1] + cd.cheval(i, i));
                TauScalar s = -piPow((long long)v->parity(l) * cd.parity(i) + x) *
                              TauScalar::q((int)-x);
                accumulate(eCols[i - 1][l], k, s * c);
            }
            // S(F_i) = -F_i K~_i scales by the weight of b_k
            for (const auto& [l, c] : v->fColumn(i, k)) {
                long long x = cd.d(i) * v->weight(k).wt.a[i - 1];
                TauScalar s = -piPow((long long)v->parity(l) * cd.parity(i)) *
                              TauScalar::q((int)x);
                accumulate(fCols[i - 1][l], k, s * c);
            }
        }
    }
    return std::make_shared<Module>(cd, std::move(wts), std::move(eCols), std::move(fCols));
}

ModulePtr parityShift(const ModulePtr& v) {
    int n = v->datum().rank();
    size_t d = v->dim();
    std::vector<BigWeight> wts;
    wts.reserve(d);
    for (size_t l = 0; l < d; ++l) wts.push_back(BigWeight(v->weight(l).wt, v->parity(l) ^ 1));
    std::vector<std::vector<SparseVec>> eCols(n), fCols(n);
    for (int i = 1; i <= n; ++i) {
        for (size_t l = 0; l < d; ++l) {
            eCols[i - 1].push_back(v->eColumn(i, l));
            fCols[i - 1].push_back(v->fColumn(i, l));
        }
    }
    return std::make_shared<Module>(v->datum(), std::move(wts), std::move(eCols), std::move(fCols));
}

// ---- tensor-list boundaries -------------------------------------------------

size_t boundaryDim(const std::vector<ModulePtr>& factors) {
    size_t d = 1;
    for (const auto& m : factors) d *= m->dim();
    return d;
}

namespace {

std::vector<size_t> splitFlat(const std::vector<ModulePtr>& factors, size_t flat) {
    std::vector<size_t> idx(factors.size());
    for (size_t t = factors.size(); t-- > 0;) {
        idx[t] = flat % factors[t]->dim();
        flat /= factors[t]->dim();
    }
    return idx;
}

}  // namespace

BigWeight boundaryWeight(const std::vector<ModulePtr>& factors, size_t flat) {
    if (factors.empty()) return BigWeight();
    auto idx = splitFlat(factors, flat);
    BigWeight w = factors[0]->weight(idx[0]);
    for (size_t t = 1; t < factors.size(); ++t) {
        const BigWeight& u = factors[t]->weight(idx[t]);
        w = BigWeight(w.wt + u.wt, w.eps + u.eps);
    }
    return w;
}

SparseVec boundaryActE(const std::vector<ModulePtr>& factors, int i, size_t flat) {
    // Delta(E_i) = E_i (x) 1 + J~_i K~_i (x) E_i, iterated over the slots
    auto idx = splitFlat(factors, flat);
    SparseVec out;
    TauScalar pref(1);
    size_t stride = boundaryDim(factors);
    for (size_t t = 0; t < factors.size(); ++t) {
        const Module& m = *factors[t];
        const CartanDatum& cd = m.datum();
        stride /= m.dim();
        for (const auto& [r, c] : m.eColumn(i, idx[t]))
            accumulate(out, flat - idx[t] * stride + r * stride, pref * c);
        long long x = cd.d(i) * m.weight(idx[t]).wt.a[i - 1];
        pref = pref * piPow((long long)cd.parity(i) * m.parity(idx[t]) + x) *
               TauScalar::q((int)x);
    }
    return out;
}

SparseVec boundaryActF(const std::vector<ModulePtr>& factors, int i, size_t flat) {
    // Delta(F_i) = F_i (x) K~_i^{-1} + 1 (x) F_i, iterated over the slots
    auto idx = splitFlat(factors, flat);
    SparseVec out;
    long long suffix = 0;
    for (size_t t = 0; t < factors.size(); ++t) {
        const Module& m = *factors[t];
        suffix += m.datum().d(i) * m.weight(idx[t]).wt.a[i - 1];
    }
    long long sign = 0;
    size_t stride = boundaryDim(factors);
    for (size_t t = 0; t < factors.size(); ++t) {
        const Module& m = *factors[t];
        const CartanDatum& cd = m.datum();
        stride /= m.dim();
        suffix -= cd.d(i) * m.weight(idx[t]).wt.a[i - 1];
        TauScalar pref = piPow(sign) * TauScalar::q((int)-suffix);
        for (const auto& [r, c] : m.fColumn(i, idx[t]))
            accumulate(out, flat - idx[t] * stride + r * stride, pref * c);
        sign += (long long)cd.parity(i) * m.parity(idx[t]);
    }
    return out;
}

ModulePtr tensor(const ModulePtr& a, const ModulePtr& b) {
    std::vector<ModulePtr> factors{a, b};
    int n = a->datum().rank();
    size_t d = boundaryDim(factors);
    std::vector<BigWeight> wts;
    wts.reserve(d);
    for (size_t flat = 0; flat < d; ++flat) wts.push_back(boundaryWeight(factors, flat));
    std::vector<std::vector<SparseVec>> eCols(n), fCols(n);
    for (int i = 1; i <= n; ++i) {
        eCols[i - 1].reserve(d);
        fCols[i - 1].reserve(d);
        for (size_t flat = 0; flat < d; ++flat) {
            eCols[i - 1].push_back(boundaryActE(factors, i, flat));
            fCols[i - 1].push_back(boundaryActF(factors, i, flat));
        }
    }
    return std::make_shared<Module>(a->datum(), std::move(wts), std::move(eCols), std::move(fCols));
}

// ---- morphisms ----------------------------------------------------------------

Morphism identityMorphism(std::vector<ModulePtr> boundary) {
    Morphism m;
    size_t d = boundaryDim(boundary);
    m.dom = boundary;
    m.cod = std::move(boundary);
    m.cols.resize(d);
    for (size_t l = 0; l < d; ++l) m.cols[l].emplace(l, TauScalar(1));
    return m;
}

SparseVec applyMorphism(const Morphism& m, const SparseVec& v) {
    SparseVec out;
    for (const auto& [l, c] : v)
        for (const auto& [r, x] : m.cols[l]) accumulate(out, r, c * x);
    return out;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.cod != g.dom) throw std::invalid_argument("morphism boundaries do not match");
    Morphism out;
    out.dom = f.dom;
    out.cod = g.cod;
    out.cols.reserve(f.cols.size());
    for (const auto& col : f.cols) out.cols.push_back(applyMorphism(g, col));
    return out;
}

Morphism tensorMorphism(const Morphism& a, const Morphism& b) {
    Morphism out;
    out.dom = a.dom;
    out.dom.insert(out.dom.end(), b.dom.begin(), b.dom.end());
    out.cod = a.cod;
    out.cod.insert(out.cod.end(), b.cod.begin(), b.cod.end());
    size_t bDom = boundaryDim(b.dom), bCod = boundaryDim(b.cod);
    out.cols.resize(boundaryDim(out.dom));
    for (size_t la = 0; la < a.cols.size(); ++la)
        for (size_t lb = 0; lb < bDom; ++lb) {
            SparseVec& col = out.cols[la * bDom + lb];
            for (const auto& [ra, ca] : a.cols[la])
                for (const auto& [rb, cb] : b.cols[lb])
                    accumulate(col, ra * bCod + rb, ca * cb);
        }
    return out;
}

Morphism scaleMorphism(const TauScalar& c, const Morphism& m) {
    Morphism out;
    out.dom = m.dom;
    out.cod = m.cod;
    out.cols.reserve(m.cols.size());
    for (const auto& col : m.cols) out.cols.push_back(scaleVec(c, col));
    return out;
}

bool morphismEqual(const Morphism& a, const Morphism& b) {
    return a.dom == b.dom && a.cod == b.cod && a.cols == b.cols;
}

TauScalar scalarValue(const Morphism& m) {
    if (!m.dom.empty() || !m.cod.empty())
        throw std::invalid_argument("not a closed diagram");
    auto it = m.cols[0].find(0);
    return it == m.cols[0].end() ? TauScalar(0) : it->second;
}

// ---- cups and caps -------------------------------------------------------------

CupsCaps cupsCaps(const ModulePtr& v, const ModulePtr& vstar) {
    const CartanDatum& cd = v->datum();
    size_t d = v->dim();
    if (vstar->dim() != d) throw std::invalid_argument("second factor is not the dual of the first");
    for (size_t l = 0; l < d; ++l)
        if (vstar->weight(l).wt != -v->weight(l).wt || vstar->parity(l) != v->parity(l))
            throw std::invalid_argument("second factor is not the dual of the first");

    CupsCaps cc;
    cc.ev.dom = {vstar, v};
    cc.qtr.dom = {v, vstar};
    cc.coev.cod = {vstar, v};
    cc.coqtr.cod = {v, vstar};
    cc.ev.cols.resize(d * d);
    cc.qtr.cols.resize(d * d);
    cc.coev.cols.resize(1);
    cc.coqtr.cols.resize(1);
    for (size_t k = 0; k < d; ++k) {
        long long rho = rhoPairing(cd, v->weight(k).wt);
        TauScalar sign = piPow(v->parity(k));
        cc.ev.cols[k * d + k].emplace(0, TauScalar(1));
        cc.qtr.cols[k * d + k].emplace(0, sign * TauScalar::q((int)-rho));
        cc.coev.cols[0].emplace(k * d + k, sign * TauScalar::q((int)rho));
        cc.coqtr.cols[0].emplace(k * d + k, TauScalar(1));
    }
    return cc;
}

}  // namespace covknot
