#include "covknot/root_datum.hpp"

#include <sstream>

namespace covknot {

static int mod4(long long x) { return (int)(((x % 4) + 4) % 4); }
static int mod2(long long x) { return (int)(((x % 2) + 2) % 2); }

// ---- CartanDatum ------------------------------------------------------------

CartanDatum::CartanDatum(int rank) : n(rank) {
    if (rank < 1) throw std::invalid_argument("rank must be positive");
}

int CartanDatum::dot(int i, int j) const {
    if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("node out of range");
    if (i == j) return i < n ? 4 : 2;
    if (i - j == 1 || j - i == 1) return -2;
    return 0;
}

// ---- Weight -----------------------------------------------------------------

Weight Weight::fundamental(int r, int n) {
    Weight w = zero(n);
    if (r < 1 || r > n) throw std::invalid_argument("node out of range");
    w.a[r - 1] = 1;
    return w;
}

bool Weight::isZero() const {
    for (long long x : a)
        if (x) return false;
    return true;
}

Weight Weight::operator-() const {
    Weight w = *this;
    for (auto& x : w.a) x = -x;
    return w;
}

Weight Weight::operator+(const Weight& o) const {
    Weight w = *this;
    for (size_t k = 0; k < a.size(); ++k) w.a[k] += o.a[k];
    return w;
}

Weight Weight::operator-(const Weight& o) const {
    Weight w = *this;
    for (size_t k = 0; k < a.size(); ++k) w.a[k] -= o.a[k];
    return w;
}

Weight Weight::operator*(long long k) const {
    Weight w = *this;
    for (auto& x : w.a) x *= k;
    return w;
}

std::string Weight::str() const {
    std::string s;
    for (size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
    return s;
}

Weight parseWeight(const std::string& text, int n) {
    std::vector<long long> coords;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t used = 0;
        long long v;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad weight coordinate '" + part + "'");
        }
        while (used < part.size() && (part[used] == ' ')) ++used;
        if (used != part.size())
            throw std::invalid_argument("bad weight coordinate '" + part + "'");
        coords.push_back(v);
    }
    if ((int)coords.size() != n)
        throw std::invalid_argument("weight needs " + std::to_string(n) + " coordinates, got " +
                                    std::to_string(coords.size()));
    return Weight(std::move(coords));
}

// ---- RootVector -------------------------------------------------------------

RootVector RootVector::simple(int i, int n) {
    RootVector v = zero(n);
    if (i < 1 || i > n) throw std::invalid_argument("node out of range");
    v.m[i - 1] = 1;
    return v;
}

bool RootVector::isZero() const {
    for (long long x : m)
        if (x) return false;
    return true;
}

long long RootVector::height() const {
    long long h = 0;
    for (long long x : m) h += x;
    return h;
}

int RootVector::parityP() const {
    long long v = m.back();
    return mod2(v * (v - 1) / 2);
}

RootVector RootVector::operator-() const {
    RootVector v = *this;
    for (auto& x : v.m) x = -x;
    return v;
}

RootVector RootVector::operator+(const RootVector& o) const {
    RootVector v = *this;
    for (size_t k = 0; k < m.size(); ++k) v.m[k] += o.m[k];
    return v;
}

RootVector RootVector::operator-(const RootVector& o) const {
    RootVector v = *this;
    for (size_t k = 0; k < m.size(); ++k) v.m[k] -= o.m[k];
    return v;
}

std::string RootVector::str() const {
    std::string s;
    for (size_t k = 0; k < m.size(); ++k) s += (k ? "," : "") + std::to_string(m[k]);
    return s;
}

// ---- pairings ---------------------------------------------------------------

long long rootDot(const CartanDatum& cd, const RootVector& nu, const RootVector& mu) {
    long long s = 0;
    for (int i = 1; i <= cd.rank(); ++i)
        for (int j = 1; j <= cd.rank(); ++j) s += nu.m[i - 1] * mu.m[j - 1] * cd.dot(i, j);
    return s;
}

long long bullet(const CartanDatum& cd, const RootVector& nu) {
    long long s = rootDot(cd, nu, nu);
    for (int i = 1; i <= cd.rank(); ++i) s -= nu.m[i - 1] * cd.dot(i, i);
    return s / 2;
}

Weight embedRoot(const CartanDatum& cd, const RootVector& nu) {
    Weight w = Weight::zero(cd.rank());
    for (int r = 1; r <= cd.rank(); ++r) {
        long long s = 0;
        for (int i = 1; i <= cd.rank(); ++i) s += nu.m[i - 1] * cd.cheval(r, i);
        w.a[r - 1] = s;
    }
    return w;
}

long long tildePairing(const CartanDatum& cd, const RootVector& nu, const Weight& lam) {
    long long s = 0;
    for (int i = 1; i <= cd.rank(); ++i) s += (long long)cd.d(i) * nu.m[i - 1] * lam.a[i - 1];
    return s;
}

int weightParity(const CartanDatum& cd, const Weight& lam) {
    return mod2((long long)cd.rank() * lam.a.back());
}

long long rhoPairing(const CartanDatum& cd, const Weight& lam) {
    long long s = 0, n = cd.rank();
    for (int r = 1; r <= n; ++r) {
        long long w = (r < n) ? 2LL * r * (2 * n - r) : n * n;
        s += lam.a[r - 1] * w;
    }
    return s;
}

// ---- decompositions ---------------------------------------------------------

std::optional<RootVector> rootDecompose(const CartanDatum& cd, const Weight& lam) {
    int n = cd.rank();
    // solve A x = a over Q with A[r][i] = <r, i>
    std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n + 1));
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i < n; ++i) mat[r][i] = cd.cheval(r + 1, i + 1);
        mat[r][n] = lam.a[r];
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (mat[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("singular Cartan matrix");
        std::swap(mat[col], mat[piv]);
        Rational inv = Rational(1) / mat[col][col];
        for (int c = col; c <= n; ++c) mat[col][c] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || mat[r][col] == 0) continue;
            Rational f = mat[r][col];
            for (int c = col; c <= n; ++c) mat[r][c] -= f * mat[col][c];
        }
    }
    RootVector nu = RootVector::zero(n);
    for (int i = 0; i < n; ++i) {
        Rational x = mat[i][n];
        if (boost::multiprecision::denominator(x) != 1) return std::nullopt;
        nu.m[i] = boost::multiprecision::numerator(x).convert_to<long long>();
    }
    return nu;
}

XDecomposition decomposeX(const CartanDatum& cd, const Weight& lam) {
    XDecomposition d;
    bool inRootLattice = mod2(lam.a.back()) == 0;
    d.rep = inRootLattice ? Weight::zero(cd.rank()) : Weight::fundamental(cd.rank(), cd.rank());
    auto mu = rootDecompose(cd, lam - d.rep);
    if (!mu) throw std::logic_error("transversal decomposition failed");
    d.mu = *mu;
    return d;
}

BigWeight shiftBigWeight(const CartanDatum& cd, const BigWeight& z, const RootVector& nu) {
    return BigWeight(z.wt + embedRoot(cd, nu), z.eps + nu.parity());
}

XhatDecomposition decomposeXhat(const CartanDatum& cd, const BigWeight& z) {
    XhatDecomposition d;
    XDecomposition dx = decomposeX(cd, z.wt);
    d.mu = dx.mu;
    d.rep = BigWeight(dx.rep, mod2(z.eps - d.mu.parity()));
    return d;
}

// ---- f, r, l ---------------------------------------------------------------

TauScalar fFunction(const CartanDatum& cd, const Weight& z0, const Weight& z1) {
    XDecomposition d0 = decomposeX(cd, z0), d1 = decomposeX(cd, z1);
    long long A = -tildePairing(cd, d0.mu, d1.rep);
    long long B = -tildePairing(cd, d1.mu, d0.rep) - rootDot(cd, d0.mu, d1.mu);
    return piPow(A) * TauScalar::q((int)(A + B));
}

TauScalar rFunction(const CartanDatum& cd, const Weight& z0, const Weight& z1) {
    return fFunction(cd, z0, z1) * fFunction(cd, z0, -z1);
}

TauScalar lFunction(const CartanDatum& cd, const Weight& z0, const Weight& z1) {
    return piPow((long long)weightParity(cd, z0) * weightParity(cd, z1)) *
           rFunction(cd, z0, z1);
}

// ---- enhancer and kappa ------------------------------------------------------

int enhancer(const CartanDatum& cd, const RootVector& mu, const RootVector& nu) {
    long long s = 0;
    for (int i = 1; i <= cd.rank(); ++i) {
        for (int j = 1; j <= cd.rank(); ++j) {
            long long phi = (i == j) ? cd.d(i) : (i < j ? cd.dot(i, j) : 0);
            s += mu.m[i - 1] * nu.m[j - 1] * phi;
        }
    }
    return mod4(s);
}

int enhancerX(const CartanDatum& cd, const RootVector& mu, const Weight& lam) {
    return enhancer(cd, mu, decomposeX(cd, lam).mu);
}

int kappa(const CartanDatum& cd, int c1, int c2, const BigWeight& z0, const BigWeight& z1) {
    if ((c1 != 1 && c1 != -1) || (c2 != 1 && c2 != -1))
        throw std::invalid_argument("orientation must be +1 or -1");
    XhatDecomposition d0 = decomposeXhat(cd, z0), d1 = decomposeXhat(cd, z1);
    const RootVector &mu = d0.mu, &nu = d1.mu;
    long long s = tildePairing(cd, mu, d1.rep.wt);
    s += (long long)c2 * enhancerX(cd, mu, d1.rep.wt * c2);
    s += 2LL * d0.rep.eps * nu.parity();
    s += (long long)c1 * enhancerX(cd, nu, d0.rep.wt * c1);
    s += rootDot(cd, mu, nu);
    s += enhancer(cd, mu, nu);
    return mod4(s);
}

int kappaMulti(const CartanDatum& cd, const std::vector<int>& c,
               const std::vector<BigWeight>& z) {
    if (c.size() != z.size()) throw std::invalid_argument("orientation/weight length mismatch");
    long long s = 0;
    for (size_t r = 0; r < z.size(); ++r)
        for (size_t t = r + 1; t < z.size(); ++t) s += kappa(cd, c[r], c[t], z[r], z[t]);
    return mod4(s);
}

}  // namespace covknot
