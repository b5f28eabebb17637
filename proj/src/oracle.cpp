#include "covknot/oracle.hpp"

#include <numeric>
#include <stdexcept>

namespace covknot {

// ---- Weyl dimension ----

long long weylDim(int n, const Weight& lambda) {
    if (lambda.rank() != n) throw std::invalid_argument("weight rank mismatch");
    for (long long a : lambda.a)
        if (a < 0) throw std::invalid_argument("weight must be dominant");

    // doubled shifted epsilon-coordinates: L_i = 2 l_i + P_i with
    // l_i = a_i + ... + a_{n-1} + a_n / 2 and P_i = 2n - 2i + 1
    std::vector<long long> L(n), P(n);
    long long tail = lambda.a[n - 1];
    for (int i = n - 1; i >= 0; --i) {
        P[i] = 2 * (n - i) - 1;
        L[i] = tail + P[i];
        if (i > 0) tail += 2 * lambda.a[i - 1];
    }

    Rational dim(1);
    for (int i = 0; i < n; ++i) {
        dim *= Rational(L[i], P[i]);
        for (int j = i + 1; j < n; ++j)
            dim *= Rational(L[i] * L[i] - L[j] * L[j], P[i] * P[i] - P[j] * P[j]);
    }
    if (boost::multiprecision::denominator(dim) != 1)
        throw std::logic_error("Weyl dimension is not an integer");
    return boost::multiprecision::numerator(dim).convert_to<long long>();
}

// ---- Kauffman bracket ----

namespace {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void join(int x, int y) { up[find(x)] = find(y); }
};

}  // namespace

Laurent kauffmanJones(int strands, const std::vector<int>& letters) {
    if (strands < 1) throw std::invalid_argument("need at least one strand");
    int c = (int)letters.size();
    if (c > 12) throw std::invalid_argument("crossing budget exceeded");
    for (int l : letters)
        if (l == 0 || std::abs(l) >= strands)
            throw std::invalid_argument("braid letter out of range");

    const Laurent delta = -(Laurent::q(2) + Laurent::q(-2));
    std::vector<Laurent> deltaPow((c + 1) * strands + 1);
    deltaPow[0] = Laurent(1);
    for (size_t p = 1; p < deltaPow.size(); ++p) deltaPow[p] = deltaPow[p - 1] * delta;

    // One grid node per (level, strand position); every node has degree two,
    // so the smoothed closed diagram is a disjoint union of loops and the
    // loop count is the component count.
    long long writhe = 0;
    for (int l : letters) writhe += l > 0 ? 1 : -1;

    Laurent bracket;
    for (unsigned mask = 0; mask < (1u << c); ++mask) {
        UnionFind uf((c + 1) * strands);
        auto node = [&](int level, int pos) { return level * strands + pos; };
        int exponent = 0;
        for (int l = 0; l < c; ++l) {
            int j = std::abs(letters[l]);
            int sign = letters[l] > 0 ? 1 : -1;
            // smoothing bit 0: A-smoothing of the crossing; positive letters
            // resolve to the identity tangle, negative ones to the cup-cap
            bool identity = ((mask >> l) & 1u) == 0 ? (sign > 0) : (sign < 0);
            exponent += ((mask >> l) & 1u) == 0 ? 1 : -1;
            for (int pos = 0; pos < strands; ++pos) {
                if (identity || (pos != j - 1 && pos != j)) {
                    uf.join(node(l, pos), node(l + 1, pos));
                }
            }
            if (!identity) {
                uf.join(node(l, j - 1), node(l, j));
                uf.join(node(l + 1, j - 1), node(l + 1, j));
            }
        }
        for (int pos = 0; pos < strands; ++pos) uf.join(node(c, pos), node(0, pos));

        long long loops = 0;
        for (int v = 0; v < (c + 1) * strands; ++v)
            if (uf.find(v) == v) ++loops;
        bracket = bracket + deltaPow[loops].shifted(exponent);
    }

    // writhe correction (-A^3)^{-wr}
    Laurent result = bracket.shifted((int)(-3 * writhe));
    if (writhe % 2 != 0) result = -result;
    return result;
}

}  // namespace covknot
