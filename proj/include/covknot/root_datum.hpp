#pragma once

// Root datum of type B(0,n): Cartan data, the weight lattice X in
// fundamental-weight coordinates, the root lattice Z[I], transversal
// decompositions for X and for X-hat = X x Z/2, the balanced pairing
// f (with its r and l variants), the enhancer phi and the mod-4
// cocycle kappa.

#include <optional>
#include <vector>

#include "covknot/scalar.hpp"

namespace covknot {

// Simple roots are indexed 1..n; node n is the short odd one.
class CartanDatum {
public:
    explicit CartanDatum(int rank);

    int rank() const { return n; }
    // symmetric bilinear form on the simple roots
    int dot(int i, int j) const;
    int d(int i) const { return dot(i, i) / 2; }
    int parity(int i) const { return d(i) % 2; }
    // <i, j> = 2 (i . j) / (i . i)
    int cheval(int i, int j) const { return 2 * dot(i, j) / dot(i, i); }
    int serreBound(int i, int j) const { return 1 - cheval(i, j); }

private:
    int n;
};

// Element of X, stored as the coordinates a_r = <alpha_r^vee, lambda>.
struct Weight {
    std::vector<long long> a;

    Weight() {}
    explicit Weight(std::vector<long long> coords) : a(std::move(coords)) {}
    static Weight zero(int n) { return Weight(std::vector<long long>(n, 0)); }
    static Weight fundamental(int r, int n);

    int rank() const { return (int)a.size(); }
    bool isZero() const;

    Weight operator-() const;
    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator*(long long k) const;
    bool operator==(const Weight& o) const { return a == o.a; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const { return a < o.a; }

    std::string str() const;  // "2,0,1"
};

Weight parseWeight(const std::string& text, int n);

// Element of Z[I].
struct RootVector {
    std::vector<long long> m;

    RootVector() {}
    explicit RootVector(std::vector<long long> mult) : m(std::move(mult)) {}
    static RootVector zero(int n) { return RootVector(std::vector<long long>(n, 0)); }
    static RootVector simple(int i, int n);

    int rank() const { return (int)m.size(); }
    bool isZero() const;
    long long height() const;
    // p(nu) = nu_n mod 2
    int parity() const { return (int)(((m.back() % 2) + 2) % 2); }
    // bold-p(nu) = binom(nu_n, 2) mod 2
    int parityP() const;

    RootVector operator-() const;
    RootVector operator+(const RootVector& o) const;
    RootVector operator-(const RootVector& o) const;
    bool operator==(const RootVector& o) const { return m == o.m; }
    bool operator!=(const RootVector& o) const { return !(*this == o); }
    bool operator<(const RootVector& o) const { return m < o.m; }

    std::string str() const;
};

// nu . mu under the bilinear form
long long rootDot(const CartanDatum& cd, const RootVector& nu, const RootVector& mu);
// bullet(nu) = (nu.nu - sum_i nu_i (i.i)) / 2
long long bullet(const CartanDatum& cd, const RootVector& nu);
// image of nu in X: a_r = sum_i nu_i <r, i>
Weight embedRoot(const CartanDatum& cd, const RootVector& nu);
// <tilde-nu, lambda> = sum_i d_i nu_i a_i(lambda)
long long tildePairing(const CartanDatum& cd, const RootVector& nu, const Weight& lam);
// super-degree P(lambda) = n a_n(lambda) mod 2
int weightParity(const CartanDatum& cd, const Weight& lam);
// <tilde-rho, lambda>
long long rhoPairing(const CartanDatum& cd, const Weight& lam);

// exact solution of embedRoot(nu) = lam; empty when lam is not in Z[I]
std::optional<RootVector> rootDecompose(const CartanDatum& cd, const Weight& lam);

// lam = rep + embedRoot(mu) with rep in the transversal {0, omega_n}
struct XDecomposition {
    Weight rep;
    RootVector mu;
};
XDecomposition decomposeX(const CartanDatum& cd, const Weight& lam);

// Element of X-hat = X x Z/2; Z[I] embeds by nu -> (embedRoot(nu), p(nu)).
struct BigWeight {
    Weight wt;
    int eps = 0;  // 0 or 1

    BigWeight() {}
    BigWeight(Weight w, int e) : wt(std::move(w)), eps(((e % 2) + 2) % 2) {}

    bool operator==(const BigWeight& o) const { return wt == o.wt && eps == o.eps; }
    bool operator!=(const BigWeight& o) const { return !(*this == o); }
};

BigWeight shiftBigWeight(const CartanDatum& cd, const BigWeight& z, const RootVector& nu);

// zhat = rep + nu with rep in the X-hat transversal {(0,0),(0,1),(w_n,0),(w_n,1)}
struct XhatDecomposition {
    BigWeight rep;
    RootVector mu;
};
XhatDecomposition decomposeXhat(const CartanDatum& cd, const BigWeight& z);

// the balanced pairing on X x X: trivial on transversal pairs and
// f(rep0 + mu, rep1 + nu) = (pi q)^{-<mu~, rep1>} q^{-<nu~, rep0> - mu.nu}
TauScalar fFunction(const CartanDatum& cd, const Weight& z0, const Weight& z1);
// r(z, z') = f(z, z') f(z, -z')
TauScalar rFunction(const CartanDatum& cd, const Weight& z0, const Weight& z1);
// l(z, z') = pi^{P(z) P(z')} r(z, z')
TauScalar lFunction(const CartanDatum& cd, const Weight& z0, const Weight& z1);

// enhancer, Z-bilinear mod 4: phi(i,i) = d_i, phi(r,s) = r.s and
// phi(s,r) = 0 for r < s
int enhancer(const CartanDatum& cd, const RootVector& mu, const RootVector& nu);
// second slot extended to X through decomposeX, transversal part dropped
int enhancerX(const CartanDatum& cd, const RootVector& mu, const Weight& lam);

// mod-4 cocycle attached to a pair of orientations c in {+1,-1}
int kappa(const CartanDatum& cd, int c1, int c2, const BigWeight& z0, const BigWeight& z1);
// sum over ordered pairs r < s
int kappaMulti(const CartanDatum& cd, const std::vector<int>& c,
               const std::vector<BigWeight>& z);

}  // namespace covknot
