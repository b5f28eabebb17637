#pragma once

// Exact arithmetic in the coefficient ring Q(i)(q)[tau]/(tau^4 - 1).
//
// The ring is a product of four fields: evaluating tau at i^k (k = 0..3)
// gives four ring maps onto Q(i)(q), and a TauScalar is stored as that
// 4-tuple of evaluations.  All ring operations, inversion (with precise
// zero-divisor reporting), the bar involution, the twistor ring map and the
// specializations are componentwise; the tau-coefficient form is recovered
// by the exact inverse DFT over the 4th roots of unity when rendering.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace covknot {

using Rational = boost::multiprecision::cpp_rational;

// ---- Gaussian rationals -------------------------------------------------

// re + im*i with i^2 = -1; the unit i plays the role of t.
struct Gauss {
    Rational re;
    Rational im;

    Gauss() : re(0), im(0) {}
    Gauss(int v) : re(v), im(0) {}
    Gauss(long long v) : re(v), im(0) {}
    Gauss(Rational r) : re(std::move(r)), im(0) {}
    Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Gauss unitI() { return Gauss(Rational(0), Rational(1)); }
    // i^k for any integer k
    static Gauss iPow(long long k);

    bool isZero() const { return re == 0 && im == 0; }
    Gauss conj() const { return Gauss(re, -im); }

    Gauss operator-() const { return Gauss(-re, -im); }
    Gauss operator+(const Gauss& o) const { return Gauss(re + o.re, im + o.im); }
    Gauss operator-(const Gauss& o) const { return Gauss(re - o.re, im - o.im); }
    Gauss operator*(const Gauss& o) const {
        return Gauss(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    Gauss inverse() const;
    Gauss operator/(const Gauss& o) const { return *this * o.inverse(); }

    bool operator==(const Gauss& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Gauss& o) const { return !(*this == o); }

    std::string str() const;  // "1", "-3/2", "i", "(1-i)", "(2+3/2*i)"
};

// ---- Laurent polynomials in q over Gauss --------------------------------

class Laurent {
public:
    Laurent() {}
    Laurent(const Gauss& g) { if (!g.isZero()) c[0] = g; }
    Laurent(int v) : Laurent(Gauss(v)) {}
    static Laurent q(int e = 1) { return monomial(e, Gauss(1)); }
    static Laurent monomial(int e, const Gauss& g) {
        Laurent l;
        if (!g.isZero()) l.c[e] = g;
        return l;
    }

    bool isZero() const { return c.empty(); }
    bool isOne() const { return c.size() == 1 && c.count(0) && c.at(0) == Gauss(1); }
    int minExp() const;  // throws on zero
    int maxExp() const;
    Gauss coeff(int e) const {
        auto it = c.find(e);
        return it == c.end() ? Gauss() : it->second;
    }
    const std::map<int, Gauss>& terms() const { return c; }
    int termCount() const { return (int)c.size(); }

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator*(const Gauss& g) const;
    bool operator==(const Laurent& o) const { return c == o.c; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // substitute q -> unit * q^e with e in {1,-1}
    Laurent substQ(const Gauss& unit, int e) const;
    Laurent shifted(int e) const;  // * q^e

    std::string str() const;

private:
    std::map<int, Gauss> c;  // exponent -> nonzero coefficient
    void add(int e, const Gauss& g);
    friend class RatFn;
};

// ---- Rational functions num/den in q ------------------------------------

// Canonical form: den is an ordinary polynomial, monic in its highest
// q-power, with nonzero constant term (any q-shift lives in num), and
// gcd(num, den) = 1.  Equality is then plain component comparison.
class RatFn {
public:
    RatFn() : nu(), de(1) {}
    RatFn(const Laurent& n) : nu(n), de(1) {}
    RatFn(const Laurent& n, const Laurent& d);
    RatFn(int v) : nu(Gauss(v)), de(1) {}
    RatFn(const Gauss& g) : nu(g), de(1) {}

    const Laurent& num() const { return nu; }
    const Laurent& den() const { return de; }
    bool isZero() const { return nu.isZero(); }
    bool isLaurent() const { return de.isOne(); }
    const Laurent& asLaurent() const;  // throws if a genuine fraction

    RatFn operator-() const;
    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator*(const Gauss& g) const;
    RatFn inverse() const;  // throws std::domain_error on zero
    RatFn operator/(const RatFn& o) const { return *this * o.inverse(); }
    bool operator==(const RatFn& o) const { return nu == o.nu && de == o.de; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    RatFn substQ(const Gauss& unit, int e) const;

    std::string str() const;

private:
    Laurent nu, de;
    void normalize();
};

// ---- The tau-ring --------------------------------------------------------

class TauScalar {
public:
    TauScalar() { v.fill(RatFn(0)); }
    TauScalar(int n) { v.fill(RatFn(n)); }
    TauScalar(const Rational& r) { v.fill(RatFn(Gauss(r))); }
    TauScalar(const Gauss& g) { v.fill(RatFn(g)); }
    TauScalar(const RatFn& f) { v.fill(f); }

    static TauScalar q(int e = 1);
    static TauScalar tau(int k = 1);
    static TauScalar piValue() { return tau(2); }
    // t^k as a constant (the Gaussian unit i^k)
    static TauScalar tPow(long long k) { return TauScalar(Gauss::iPow(k)); }
    // projector onto the tau = t^k evaluation component
    static TauScalar idempotent(int k);
    static TauScalar fromComponents(std::array<RatFn, 4> comps);

    const RatFn& component(int k) const { return v[((k % 4) + 4) % 4]; }

    bool isZero() const;
    bool isOne() const { return *this == TauScalar(1); }
    bool isInvertible() const;

    TauScalar operator-() const;
    TauScalar operator+(const TauScalar& o) const;
    TauScalar operator-(const TauScalar& o) const;
    TauScalar operator*(const TauScalar& o) const;
    TauScalar& operator+=(const TauScalar& o) { return *this = *this + o; }
    TauScalar& operator*=(const TauScalar& o) { return *this = *this * o; }
    bool operator==(const TauScalar& o) const { return v == o.v; }
    bool operator!=(const TauScalar& o) const { return !(*this == o); }

    // throws std::domain_error naming each vanishing idempotent component
    TauScalar tryInvert() const;
    TauScalar pow(long long e) const;  // negative e via tryInvert

    // bar involution: q -> pi q^{-1}, fixing tau and Q(i)
    TauScalar bar() const;
    // twistor ring map: q -> t^{-1} q, tau -> t^{-1} tau
    TauScalar twist() const;

    // evaluation at tau = t^k (k = 0: tau=1, 1: tau=t, 2: tau=-1, 3: tau=-t)
    RatFn specialize(int k) const { return component(k); }

    // c0..c3 with *this == c0 + c1 tau + c2 tau^2 + c3 tau^3
    std::array<RatFn, 4> coefficients() const;

    std::string str() const;

private:
    std::array<RatFn, 4> v;  // v[k] = evaluation at tau = i^k
};

// pi^e for e >= 0 or any integer (pi^2 = 1)
inline TauScalar piPow(long long e) {
    return (e % 2 == 0) ? TauScalar(1) : TauScalar::piValue();
}

// ---- (q,pi)-quantum combinatorics ----------------------------------------

// [n] at q_i = q^d, pi_i = pi^d, by the fraction-free geometric sum;
// [-n] = -pi_i^n [n].
TauScalar qInt(long long n, int d = 1);
TauScalar qFact(long long n, int d = 1);        // [n]! ; n >= 0
TauScalar qBinom(long long n, long long k, int d = 1);  // n >= k >= 0

// ---- canonical text form --------------------------------------------------

// Canonical rendering (terms by q-exponent descending, tau^k with
// 0 <= k <= 3, the Gaussian unit printed as i); round-trips via parse.
std::string render(const TauScalar& a);
// Parses the canonical rendering grammar; throws std::invalid_argument
// with position information on malformed input.
TauScalar parseScalar(const std::string& text);

}  // namespace covknot
