#include "covknot/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace covknot {

// ---- Gauss ----------------------------------------------------------------

Gauss Gauss::iPow(long long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Gauss(1);
        case 1: return Gauss(Rational(0), Rational(1));
        case 2: return Gauss(-1);
        default: return Gauss(Rational(0), Rational(-1));
    }
}

Gauss Gauss::inverse() const {
    Rational n = re * re + im * im;
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    return Gauss(re / n, -im / n);
}

static std::string ratStr(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string Gauss::str() const {
    if (isZero()) return "0";
    if (im == 0) return ratStr(re);
    std::string imPart = (im == 1) ? "i" : (im == -1) ? "-i" : ratStr(im) + "*i";
    if (re == 0) return imPart;
    std::string s = "(" + ratStr(re);
    if (im > 0) s += "+" + imPart;
    else s += "-" + (im == -1 ? std::string("i") : ratStr(-im) + "*i");
    return s + ")";
}

// ---- Laurent ----------------------------------------------------------------

void Laurent::add(int e, const Gauss& g) {
    if (g.isZero()) return;
    auto it = c.find(e);
    if (it == c.end()) {
        c.emplace(e, g);
    } else {
        it->second = it->second + g;
        if (it->second.isZero()) c.erase(it);
    }
}

int Laurent::minExp() const {
    if (c.empty()) throw std::domain_error("minExp of zero polynomial");
    return c.begin()->first;
}

int Laurent::maxExp() const {
    if (c.empty()) throw std::domain_error("maxExp of zero polynomial");
    return c.rbegin()->first;
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (auto& [e, g] : c) r.c.emplace(e, -g);
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    for (auto& [e, g] : o.c) r.add(e, g);
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent r = *this;
    for (auto& [e, g] : o.c) r.add(e, -g);
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent r;
    for (auto& [e1, g1] : c)
        for (auto& [e2, g2] : o.c) r.add(e1 + e2, g1 * g2);
    return r;
}

Laurent Laurent::operator*(const Gauss& g) const {
    Laurent r;
    if (g.isZero()) return r;
    for (auto& [e, h] : c) r.c.emplace(e, h * g);
    return r;
}

Laurent Laurent::substQ(const Gauss& unit, int e) const {
    Laurent r;
    for (auto& [exp, g] : c) {
        Gauss ue(1);
        int a = exp >= 0 ? exp : -exp;
        for (int k = 0; k < a; ++k) ue = ue * unit;
        if (exp < 0) ue = ue.inverse();
        r.add(e * exp, g * ue);
    }
    return r;
}

Laurent Laurent::shifted(int e) const {
    Laurent r;
    for (auto& [exp, g] : c) r.c.emplace(exp + e, g);
    return r;
}

std::string Laurent::str() const {
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        int e = it->first;
        Gauss g = it->second;
        bool mixed = (g.re != 0 && g.im != 0);
        std::string sign;
        Gauss mag = g;
        if (mixed) {
            sign = "+";
        } else if ((g.im == 0 && g.re < 0) || (g.re == 0 && g.im < 0)) {
            sign = "-";
            mag = -g;
        } else {
            sign = "+";
        }
        std::string coeff = mag.str();
        std::vector<std::string> factors;
        bool coeffIsOne = (mag == Gauss(1));
        if (!coeffIsOne || e == 0) factors.push_back(coeff);
        if (e != 0) factors.push_back(e == 1 ? "q" : "q^" + std::to_string(e));
        std::string body;
        for (size_t k = 0; k < factors.size(); ++k)
            body += (k ? "*" : "") + factors[k];
        if (first) {
            s = (sign == "-" ? "-" : "") + body;
            first = false;
        } else {
            s += " " + sign + " " + body;
        }
    }
    return s;
}

// ---- polynomial helpers (ordinary polys stored as Laurent, minExp >= 0) ----

static Laurent polyMod(Laurent a, const Laurent& b) {
    int db = b.maxExp();
    Gauss lb = b.coeff(db);
    while (!a.isZero() && a.maxExp() >= db) {
        int da = a.maxExp();
        Gauss f = a.coeff(da) / lb;
        a = a - b.shifted(da - db) * f;
    }
    return a;
}

static Laurent polyGcd(Laurent a, Laurent b) {
    while (!b.isZero()) {
        Laurent r = polyMod(a, b);
        a = b;
        b = r;
    }
    Gauss l = a.coeff(a.maxExp());
    if (!(l == Gauss(1))) a = a * l.inverse();
    return a;
}

static Laurent polyDivExact(const Laurent& a, const Laurent& b) {
    Laurent rem = a, quot;
    int db = b.maxExp();
    Gauss lb = b.coeff(db);
    while (!rem.isZero() && rem.maxExp() >= db) {
        int da = rem.maxExp();
        Gauss f = rem.coeff(da) / lb;
        quot = quot + Laurent::monomial(da - db, f);
        rem = rem - b.shifted(da - db) * f;
    }
    if (!rem.isZero()) throw std::logic_error("polyDivExact: nonzero remainder");
    return quot;
}

// ---- RatFn ----------------------------------------------------------------

RatFn::RatFn(const Laurent& n, const Laurent& d) : nu(n), de(d) {
    if (d.isZero()) throw std::domain_error("zero denominator");
    normalize();
}

void RatFn::normalize() {
    if (nu.isZero()) {
        de = Laurent(1);
        return;
    }
    if (de.isOne()) return;
    if (de.termCount() == 1) {
        // unit denominator: fold it into the numerator
        int e = de.minExp();
        nu = nu.shifted(-e) * de.coeff(e).inverse();
        de = Laurent(1);
        return;
    }
    int sa = nu.minExp(), sb = de.minExp();
    Laurent a = nu.shifted(-sa), b = de.shifted(-sb);
    Laurent g = polyGcd(a, b);
    if (!g.isOne()) {
        a = polyDivExact(a, g);
        b = polyDivExact(b, g);
    }
    Gauss l = b.coeff(b.maxExp());
    if (!(l == Gauss(1))) {
        Gauss li = l.inverse();
        a = a * li;
        b = b * li;
    }
    nu = a.shifted(sa - sb);
    de = b;
}

const Laurent& RatFn::asLaurent() const {
    if (!isLaurent()) throw std::domain_error("rational function is not a Laurent polynomial");
    return nu;
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.nu = -r.nu;
    return r;
}

RatFn RatFn::operator+(const RatFn& o) const {
    return RatFn(nu * o.de + o.nu * de, de * o.de);
}

RatFn RatFn::operator-(const RatFn& o) const {
    return RatFn(nu * o.de - o.nu * de, de * o.de);
}

RatFn RatFn::operator*(const RatFn& o) const { return RatFn(nu * o.nu, de * o.de); }

RatFn RatFn::operator*(const Gauss& g) const {
    if (g.isZero()) return RatFn(0);
    RatFn r = *this;
    r.nu = r.nu * g;
    return r;
}

RatFn RatFn::inverse() const {
    if (isZero()) throw std::domain_error("inverting zero rational function");
    return RatFn(de, nu);
}

RatFn RatFn::substQ(const Gauss& unit, int e) const {
    return RatFn(nu.substQ(unit, e), de.substQ(unit, e));
}

std::string RatFn::str() const {
    if (isLaurent()) return nu.str();
    return "(" + nu.str() + ")/(" + de.str() + ")";
}

// ---- TauScalar --------------------------------------------------------------

TauScalar TauScalar::q(int e) {
    TauScalar r;
    r.v.fill(RatFn(Laurent::q(e)));
    return r;
}

TauScalar TauScalar::tau(int k) {
    TauScalar r;
    for (int j = 0; j < 4; ++j) r.v[j] = RatFn(Gauss::iPow((long long)j * k));
    return r;
}

TauScalar TauScalar::idempotent(int k) {
    if (k < 0 || k > 3) throw std::domain_error("idempotent index must be 0..3");
    TauScalar r;
    r.v[k] = RatFn(1);
    return r;
}

TauScalar TauScalar::fromComponents(std::array<RatFn, 4> comps) {
    TauScalar r;
    r.v = std::move(comps);
    return r;
}

bool TauScalar::isZero() const {
    for (auto& f : v)
        if (!f.isZero()) return false;
    return true;
}

bool TauScalar::isInvertible() const {
    for (auto& f : v)
        if (f.isZero()) return false;
    return true;
}

TauScalar TauScalar::operator-() const {
    TauScalar r;
    for (int k = 0; k < 4; ++k) r.v[k] = -v[k];
    return r;
}

TauScalar TauScalar::operator+(const TauScalar& o) const {
    TauScalar r;
    for (int k = 0; k < 4; ++k) r.v[k] = v[k] + o.v[k];
    return r;
}

TauScalar TauScalar::operator-(const TauScalar& o) const {
    TauScalar r;
    for (int k = 0; k < 4; ++k) r.v[k] = v[k] - o.v[k];
    return r;
}

TauScalar TauScalar::operator*(const TauScalar& o) const {
    TauScalar r;
    for (int k = 0; k < 4; ++k) r.v[k] = v[k] * o.v[k];
    return r;
}

TauScalar TauScalar::tryInvert() const {
    static const char* names[4] = {"tau=1", "tau=t", "tau=-1", "tau=-t"};
    std::string dead;
    for (int k = 0; k < 4; ++k) {
        if (v[k].isZero()) {
            if (!dead.empty()) dead += ", ";
            dead += names[k];
        }
    }
    if (!dead.empty())
        throw std::domain_error("zero divisor: idempotent component vanishes at " + dead);
    TauScalar r;
    for (int k = 0; k < 4; ++k) r.v[k] = v[k].inverse();
    return r;
}

TauScalar TauScalar::pow(long long e) const {
    if (e < 0) return tryInvert().pow(-e);
    TauScalar r(1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

TauScalar TauScalar::bar() const {
    TauScalar r;
    for (int k = 0; k < 4; ++k) r.v[k] = v[k].substQ(Gauss(k % 2 == 0 ? 1 : -1), -1);
    return r;
}

TauScalar TauScalar::twist() const {
    TauScalar r;
    Gauss tInv(Rational(0), Rational(-1));
    for (int k = 0; k < 4; ++k) r.v[k] = v[(k + 3) % 4].substQ(tInv, 1);
    return r;
}

std::array<RatFn, 4> TauScalar::coefficients() const {
    std::array<RatFn, 4> c;
    Rational quarter(1, 4);
    for (int j = 0; j < 4; ++j) {
        RatFn acc(0);
        for (int k = 0; k < 4; ++k) acc = acc + v[k] * Gauss::iPow(-(long long)k * j);
        c[j] = acc * Gauss(quarter);
    }
    return c;
}

std::string TauScalar::str() const { return render(*this); }

// ---- quantum combinatorics ---------------------------------------------------

TauScalar qInt(long long n, int d) {
    if (n == 0) return TauScalar(0);
    if (n < 0) return -(piPow(-(long long)d * n) * qInt(-n, d));
    std::array<RatFn, 4> comps;
    for (int k = 0; k < 4; ++k) {
        Laurent sum;
        for (long long j = 0; j < n; ++j) {
            long long piExp = (long long)k * d * (n - 1 - j);
            int sign = (piExp % 2 == 0) ? 1 : -1;
            sum = sum + Laurent::monomial((int)(d * (n - 1 - 2 * j)), Gauss(sign));
        }
        comps[k] = RatFn(sum);
    }
    return TauScalar::fromComponents(comps);
}

TauScalar qFact(long long n, int d) {
    if (n < 0) throw std::domain_error("qFact of negative integer");
    TauScalar r(1);
    for (long long l = 1; l <= n; ++l) r = r * qInt(l, d);
    return r;
}

TauScalar qBinom(long long n, long long k, int d) {
    if (k < 0 || k > n) throw std::domain_error("qBinom requires 0 <= k <= n");
    TauScalar r = qFact(n, d) * (qFact(k, d) * qFact(n - k, d)).tryInvert();
    for (int j = 0; j < 4; ++j) {
        if (!r.component(j).isLaurent())
            throw std::logic_error("qBinom did not reduce to a Laurent polynomial");
    }
    return r;
}

// ---- rendering ----------------------------------------------------------------

static std::string tauSuffix(int j) {
    if (j == 0) return "";
    if (j == 1) return "τ";
    return "τ^" + std::to_string(j);
}

std::string render(const TauScalar& a) {
    auto c = a.coefficients();
    bool allZero = true, allLaurent = true;
    for (auto& f : c) {
        if (!f.isZero()) allZero = false;
        if (!f.isLaurent()) allLaurent = false;
    }
    if (allZero) return "0";

    if (!allLaurent) {
        std::string s;
        for (int j = 0; j < 4; ++j) {
            if (c[j].isZero()) continue;
            std::string piece =
                (j == 0) ? c[j].str() : "(" + c[j].str() + ")*" + tauSuffix(j);
            if (!s.empty()) s += " + ";
            s += piece;
        }
        return s;
    }

    // flatten to (q-exponent, tau-power, coefficient), q descending then tau ascending
    struct Mono {
        int e, j;
        Gauss g;
    };
    std::vector<Mono> monos;
    for (int j = 0; j < 4; ++j)
        for (auto& [e, g] : c[j].num().terms()) monos.push_back({e, j, g});
    std::sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
        if (a.e != b.e) return a.e > b.e;
        return a.j < b.j;
    });

    std::string s;
    bool first = true;
    for (auto& m : monos) {
        bool mixed = (m.g.re != 0 && m.g.im != 0);
        std::string sign = "+";
        Gauss mag = m.g;
        if (!mixed && ((m.g.im == 0 && m.g.re < 0) || (m.g.re == 0 && m.g.im < 0))) {
            sign = "-";
            mag = -m.g;
        }
        std::vector<std::string> factors;
        bool coeffIsOne = (mag == Gauss(1));
        if (!coeffIsOne || (m.j == 0 && m.e == 0)) factors.push_back(mag.str());
        if (m.j != 0) factors.push_back(tauSuffix(m.j));
        if (m.e != 0) factors.push_back(m.e == 1 ? "q" : "q^" + std::to_string(m.e));
        std::string body;
        for (size_t k = 0; k < factors.size(); ++k) body += (k ? "*" : "") + factors[k];
        if (first) {
            s = (sign == "-" ? "-" : "") + body;
            first = false;
        } else {
            s += " " + sign + " " + body;
        }
    }
    return s;
}

// ---- parsing ----------------------------------------------------------------

namespace {

enum class TokKind { Num, UnitI, Q, Tau, Caret, Star, Slash, Plus, Minus, LParen, RParen, End };

struct Token {
    TokKind kind;
    Rational num;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s(s) {}

    Token next() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t pos = i;
        if (i >= s.size()) return {TokKind::End, 0, pos};
        char ch = s[i];
        if (ch >= '0' && ch <= '9') {
            size_t j = i;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            Rational r(boost::multiprecision::cpp_int(s.substr(i, j - i)));
            i = j;
            return {TokKind::Num, r, pos};
        }
        if (ch == 'i' && !isalnum(i + 1)) { ++i; return {TokKind::UnitI, 0, pos}; }
        if (ch == 'q' && !isalnum(i + 1)) { ++i; return {TokKind::Q, 0, pos}; }
        if (s.compare(i, 3, "tau") == 0 && !isalnum(i + 3)) { i += 3; return {TokKind::Tau, 0, pos}; }
        if (s.compare(i, 2, "\xcf\x84") == 0) { i += 2; return {TokKind::Tau, 0, pos}; }
        ++i;
        switch (ch) {
            case '^': return {TokKind::Caret, 0, pos};
            case '*': return {TokKind::Star, 0, pos};
            case '/': return {TokKind::Slash, 0, pos};
            case '+': return {TokKind::Plus, 0, pos};
            case '-': return {TokKind::Minus, 0, pos};
            case '(': return {TokKind::LParen, 0, pos};
            case ')': return {TokKind::RParen, 0, pos};
        }
        throw std::invalid_argument("unexpected character '" + std::string(1, ch) +
                                    "' at position " + std::to_string(pos));
    }

private:
    const std::string& s;
    size_t i = 0;
    bool isalnum(size_t j) const {
        if (j >= s.size()) return false;
        char c = s[j];
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    }
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex(s) { advance(); }

    TauScalar parse() {
        TauScalar r = expr();
        expect(TokKind::End, "end of input");
        return r;
    }

private:
    Lexer lex;
    Token cur;

    void advance() { cur = lex.next(); }
    void expect(TokKind k, const char* what) {
        if (cur.kind != k)
            throw std::invalid_argument(std::string("expected ") + what + " at position " +
                                        std::to_string(cur.pos));
        advance();
    }

    TauScalar expr() {
        bool neg = false;
        if (cur.kind == TokKind::Minus) {
            neg = true;
            advance();
        }
        TauScalar r = term();
        if (neg) r = -r;
        while (cur.kind == TokKind::Plus || cur.kind == TokKind::Minus) {
            bool minus = cur.kind == TokKind::Minus;
            advance();
            TauScalar t = term();
            r = minus ? r - t : r + t;
        }
        return r;
    }

    TauScalar term() {
        TauScalar r = factor();
        while (cur.kind == TokKind::Star || cur.kind == TokKind::Slash) {
            bool div = cur.kind == TokKind::Slash;
            size_t pos = cur.pos;
            advance();
            TauScalar f = factor();
            if (div) {
                try {
                    r = r * f.tryInvert();
                } catch (const std::domain_error& e) {
                    throw std::invalid_argument(std::string(e.what()) + " (division at position " +
                                                std::to_string(pos) + ")");
                }
            } else {
                r = r * f;
            }
        }
        return r;
    }

    long long signedInt() {
        bool neg = false;
        if (cur.kind == TokKind::Minus) {
            neg = true;
            advance();
        }
        if (cur.kind != TokKind::Num)
            throw std::invalid_argument("expected integer exponent at position " +
                                        std::to_string(cur.pos));
        Rational r = cur.num;
        advance();
        long long n = (long long)boost::multiprecision::numerator(r).convert_to<long long>();
        return neg ? -n : n;
    }

    TauScalar factor() {
        if (cur.kind == TokKind::Minus) {
            advance();
            return -factor();
        }
        TauScalar base;
        switch (cur.kind) {
            case TokKind::Num: base = TauScalar(cur.num); advance(); break;
            case TokKind::UnitI: base = TauScalar(Gauss::unitI()); advance(); break;
            case TokKind::Q: base = TauScalar::q(); advance(); break;
            case TokKind::Tau: base = TauScalar::tau(); advance(); break;
            case TokKind::LParen: {
                advance();
                base = expr();
                expect(TokKind::RParen, "')'");
                break;
            }
            default:
                throw std::invalid_argument("expected value at position " + std::to_string(cur.pos));
        }
        if (cur.kind == TokKind::Caret) {
            size_t pos = cur.pos;
            advance();
            long long e = signedInt();
            try {
                base = base.pow(e);
            } catch (const std::domain_error& ex) {
                throw std::invalid_argument(std::string(ex.what()) + " (power at position " +
                                            std::to_string(pos) + ")");
            }
        }
        return base;
    }
};

}  // namespace

TauScalar parseScalar(const std::string& text) { return Parser(text).parse(); }

}  // namespace covknot
