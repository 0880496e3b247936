#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "cla/rational.hpp"

namespace cla {

// Dense univariate polynomials over Rat, used by the resolution bookkeeping
// for restrictions of curves to exceptional divisors.  Coefficients are
// stored low degree first and kept normalized (no trailing zeros).
struct UniPoly {
    std::vector<Rat> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const Rat& v) {
        UniPoly p;
        if (v != 0) p.c = {v};
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        UniPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        UniPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
        r.trim();
        return r;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        UniPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend UniPoly operator*(const Rat& s, const UniPoly& a) {
        UniPoly r = a;
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }

    UniPoly derivative() const {
        UniPoly r;
        for (std::size_t i = 1; i < c.size(); ++i)
            r.c.push_back(c[i] * static_cast<int>(i));
        r.trim();
        return r;
    }

    // Division with remainder; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw internal_error("division by zero polynomial");
        UniPoly rem = *this, quot;
        quot.c.assign(std::max<std::size_t>(c.size(), 1), Rat(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            Rat f = rem.c.back() / d.c.back();
            quot.c[shift] += f;
            for (std::size_t i = 0; i < d.c.size(); ++i)
                rem.c[shift + i] -= f * d.c[i];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    bool operator==(const UniPoly& o) const { return c == o.c; }
};

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        Rat lead = a.c.back();
        for (auto& x : a.c) x /= lead;
    }
    return a;
}

// Scales to integer coefficients with positive leading coefficient and
// content 1; the canonical key for comparing root clusters.
inline UniPoly uni_primitive(const UniPoly& p) {
    if (p.is_zero()) return p;
    Int den = 1;
    for (const auto& x : p.c) den = lcm(den, rat_den(x));
    Int g = 0;
    for (const auto& x : p.c) g = gcd(g, Int(rat_num(x) * den / rat_den(x)));
    if (g == 0) g = 1;
    UniPoly r = p;
    Rat scale = Rat(den, g);
    for (auto& x : r.c) x *= scale;
    if (r.c.back() < 0)
        for (auto& x : r.c) x = -x;
    return r;
}

// All rational roots with multiplicities; deflates them out of the input and
// returns the (primitive) root-free cofactor as well.
struct RationalRoots {
    std::vector<std::pair<Rat, int>> roots;
    UniPoly cofactor;
};

inline RationalRoots uni_rational_roots(const UniPoly& p) {
    RationalRoots out;
    if (p.is_zero()) { out.cofactor = p; return out; }
    UniPoly cur = uni_primitive(p);
    // x = 0 roots first
    int zmult = 0;
    while (!cur.is_zero() && cur.c[0] == 0) {
        cur.c.erase(cur.c.begin());
        ++zmult;
    }
    if (zmult > 0) out.roots.push_back({Rat(0), zmult});
    // candidates p/q with p | constant term and q | leading coefficient
    auto divisors = [](Int n) {
        std::vector<Int> ds;
        if (n < 0) n = -n;
        for (Int d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        }
        std::sort(ds.begin(), ds.end());
        return ds;
    };
    if (cur.degree() >= 1) {
        Int a0 = rat_num(cur.c.front());
        Int an = rat_num(cur.c.back());
        std::vector<Rat> candidates;
        for (const Int& p_ : divisors(a0))
            for (const Int& q_ : divisors(an)) {
                candidates.push_back(Rat(p_, q_));
                candidates.push_back(Rat(-p_, q_));
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()),
                         candidates.end());
        for (const Rat& r : candidates) {
            if (cur.degree() < 1) break;
            int mult = 0;
            while (cur.degree() >= 1 && cur.eval(r) == 0) {
                UniPoly lin(std::vector<Rat>{-r, Rat(1)});
                auto [q, rem] = cur.divmod(lin);
                if (!rem.is_zero())
                    throw internal_error("root deflation left a remainder");
                cur = q;
                ++mult;
            }
            if (mult > 0) out.roots.push_back({r, mult});
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.cofactor = uni_primitive(cur);
    return out;
}

// Squarefree part via gcd with the derivative.
inline UniPoly uni_squarefree(const UniPoly& p) {
    if (p.is_zero() || p.degree() <= 0) return p;
    UniPoly g = uni_gcd(p, p.derivative());
    auto [q, r] = p.divmod(g);
    if (!r.is_zero()) throw internal_error("squarefree division failed");
    return uni_primitive(q);
}

// Moebius substitution w :-> (a*t + b)/(c*t + d): returns the numerator
// (c*t+d)^deg(p) * p((a*t+b)/(c*t+d)) as a polynomial in t.
struct Moebius {
    Rat a = 1, b = 0, c = 0, d = 1;

    Moebius() = default;
    Moebius(Rat a_, Rat b_, Rat c_, Rat d_) : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c == 0) throw internal_error("degenerate Moebius map");
    }

    static Moebius identity() { return Moebius(); }
    static Moebius inversion() { return Moebius(0, 1, 1, 0); }
    static Moebius affine(const Rat& scale, const Rat& shift) {
        return Moebius(scale, shift, 0, 1);
    }

    // composition: (m2 after m1)(t) = m2(m1(t))
    friend Moebius compose(const Moebius& m2, const Moebius& m1) {
        return Moebius(m2.a * m1.a + m2.b * m1.c, m2.a * m1.b + m2.b * m1.d,
                       m2.c * m1.a + m2.d * m1.c, m2.c * m1.b + m2.d * m1.d);
    }

    Moebius inverse() const { return Moebius(d, -b, -c, a); }

    // Image of a finite point; empty result encodes the point at infinity.
    std::optional<Rat> apply(const Rat& t) const {
        Rat den = c * t + d;
        if (den == 0) return std::nullopt;
        return (a * t + b) / den;
    }
    std::optional<Rat> apply_infinity() const {
        if (c == 0) return std::nullopt; // infinity stays at infinity
        return a / c;
    }
};

inline UniPoly uni_moebius(const UniPoly& p, const Moebius& m) {
    if (p.is_zero()) return p;
    int n = p.degree();
    UniPoly num(std::vector<Rat>{m.b, m.a});
    UniPoly den(std::vector<Rat>{m.d, m.c});
    UniPoly acc = UniPoly::zero();
    UniPoly num_pow = UniPoly::constant(1);
    std::vector<UniPoly> den_pows(n + 1);
    den_pows[0] = UniPoly::constant(1);
    for (int i = 1; i <= n; ++i) den_pows[i] = den_pows[i - 1] * den;
    for (int i = 0; i <= n; ++i) {
        if (p.c[i] != 0)
            acc = acc + p.c[i] * (num_pow * den_pows[n - i]);
        if (i < n) num_pow = num_pow * num;
    }
    return acc;
}

} // namespace cla
