#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cla/resolution.hpp"

namespace cla {

// Formal element of the equivariant Grothendieck ring relevant here: an
// integer-coefficient Laurent polynomial in the Lefschetz class L multiplies
// the class of a cyclic cover of a stratum, kept symbolic as
// (base Euler characteristic, cover degree, order of the cyclic action).
struct MotiveExpr {
    struct Cover {
        std::string stratum;
        long long base_chi;
        long long cover_degree;
        long long mu_hat_order;

        bool operator<(const Cover& o) const {
            return stratum < o.stratum;
        }
        bool operator==(const Cover& o) const {
            return stratum == o.stratum && base_chi == o.base_chi &&
                   cover_degree == o.cover_degree && mu_hat_order == o.mu_hat_order;
        }
    };
    struct Term {
        std::map<int, long long> coeff;  // power of L -> integer
        Cover cover;
    };
    std::vector<Term> terms;

    void normalize() {
        std::map<Cover, std::map<int, long long>> merged;
        for (const auto& t : terms)
            for (const auto& [pw, c] : t.coeff)
                merged[t.cover][pw] += c;
        terms.clear();
        for (auto& [cover, coeff] : merged) {
            for (auto it = coeff.begin(); it != coeff.end();)
                it = it->second == 0 ? coeff.erase(it) : std::next(it);
            if (!coeff.empty()) terms.push_back({coeff, cover});
        }
    }

    bool is_zero() const { return terms.empty(); }

    std::string to_string() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first_term = true;
        for (const auto& t : terms) {
            if (!first_term) os << " + ";
            first_term = false;
            os << "(";
            bool first = true;
            for (const auto& [pw, c] : t.coeff) {
                if (!first && c > 0) os << "+";
                first = false;
                if (pw == 0) {
                    os << c;
                } else {
                    if (c == -1)
                        os << "-";
                    else if (c != 1)
                        os << c << "*";
                    os << "L";
                    if (pw != 1) os << "^" << pw;
                }
            }
            os << ")*Cover{" << t.cover.stratum << ", chi=" << t.cover.base_chi
               << ", deg=" << t.cover.cover_degree << "}";
        }
        return os.str();
    }
};

// Specialization L -> 1; a cover of degree d over a base of Euler
// characteristic chi contributes d * chi.
inline long long euler_specialize(const MotiveExpr& M) {
    long long total = 0;
    for (const auto& t : M.terms) {
        long long c = 0;
        for (const auto& [pw, v] : t.coeff) c += v;
        total += c * t.cover.cover_degree * t.cover.base_chi;
    }
    return total;
}

// The motivic fiber class over the origin: strata meeting the preimage of
// the origin contribute (1 - L)^{|I| - 1} times the class of their cyclic
// cover of degree gcd of the multiplicities.
inline MotiveExpr motivic_milnor_fiber(const std::vector<Stratum>& strata) {
    MotiveExpr out;
    for (const auto& s : strata) {
        if (!s.over_origin) continue;
        MotiveExpr::Term t;
        // (1 - L)^{|I|-1}
        int n = static_cast<int>(s.labels.size()) - 1;
        long long binom = 1;
        for (int k = 0; k <= n; ++k) {
            t.coeff[k] = (k % 2 == 0 ? binom : -binom);
            binom = binom * (n - k) / (k + 1);
        }
        std::string label;
        for (std::size_t i = 0; i < s.labels.size(); ++i) {
            if (i) label += "&";
            label += s.labels[i];
        }
        t.cover = {label, s.chi, s.m_gcd, s.m_gcd};
        out.terms.push_back(std::move(t));
    }
    out.normalize();
    return out;
}

// Monodromy zeta function as a product of cyclotomic-style factors
// (1 - t^m)^{-chi} over the exceptional divisors, merged and reduced.
struct ZetaFn {
    std::vector<std::pair<long long, long long>> factors;  // (m, exponent)

    std::string to_string() const {
        if (factors.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, e] : factors) {
            if (!first) os << " ";
            first = false;
            os << "(1-t^" << m << ")^" << e;
        }
        return os.str();
    }

    // degree as a rational function in t
    long long degree() const {
        long long d = 0;
        for (const auto& [m, e] : factors) d += m * e;
        return d;
    }

    bool operator==(const ZetaFn& o) const { return factors == o.factors; }
};

inline ZetaFn monodromy_zeta(const ResolutionGraph& g) {
    if (!g.smooth && !g.snc)
        throw input_error("zeta function needs a certified SNC resolution");
    std::map<long long, long long> acc;
    for (const auto& d : g.divisors)
        acc[d.m] += -static_cast<long long>(d.chi_open);
    ZetaFn out;
    for (const auto& [m, e] : acc)
        if (e != 0) out.factors.push_back({m, e});
    return out;
}

// Euler characteristic of the motivic fiber class over the origin (the
// specialization of the weighted sum; only one-divisor strata survive).
inline long long chi_top_fiber(const ResolutionGraph& g) {
    if (g.smooth) return 0;
    return euler_specialize(motivic_milnor_fiber(strata(g)));
}

// The unweighted companion: the plain sum of cover Euler characteristics
// over all strata over the origin, exposed for comparison.
inline long long chi_top_all_strata(const ResolutionGraph& g) {
    if (g.smooth) return 0;
    long long total = 0;
    for (const auto& s : strata(g))
        if (s.over_origin) total += s.m_gcd * s.chi;
    return total;
}

enum class BehrendRoute { Auto, Resolution, Milnor };

struct BehrendValue {
    long long value = 0;
    int ambient_dim = 0;
    std::optional<long long> milnor_route;      // set when computed
    std::optional<long long> resolution_route;  // set when computed (m = 2)
    std::optional<long long> mu;
    bool agreement = true;
};

// The Behrend value at the origin by two independent routes:
//   milnor:      nu = (-1)^m (1 - chi(F_0)),  chi(F_0) = 1 + (-1)^{m-1} mu
//   resolution:  nu = (-1)^m (1 - sum_i m_i chi(E_i deg)) over the
//                exceptional divisors (two variables only).
inline BehrendValue behrend_value(const Poly& f,
                                  BehrendRoute route = BehrendRoute::Auto) {
    BehrendValue out;
    const int m = static_cast<int>(f.num_vars());
    out.ambient_dim = m;
    int sign_m = (m % 2 == 0) ? 1 : -1;

    bool want_milnor =
        route == BehrendRoute::Milnor || route == BehrendRoute::Auto;
    bool want_resolution =
        route == BehrendRoute::Resolution ||
        (route == BehrendRoute::Auto && m == 2);
    if (route == BehrendRoute::Resolution && m != 2)
        throw input_error("the resolution route supports two variables only");

    if (want_milnor) {
        MilnorData md = milnor_number(f);
        if (!md.isolated())
            throw input_error(
                "the critical locus is not isolated at the origin");
        out.mu = md.mu;
        long long chi_f0 = 1 + ((m % 2 == 1) ? 1 : -1) * *md.mu;
        out.milnor_route = sign_m * (1 - chi_f0);
    }
    if (want_resolution) {
        ResolutionGraph g = embedded_resolution(f);
        long long acampo = 0;
        for (const auto& d : g.divisors)
            acampo += d.m * d.chi_open;
        out.resolution_route = sign_m * (1 - acampo);
    }
    if (out.milnor_route && out.resolution_route)
        out.agreement = *out.milnor_route == *out.resolution_route;
    out.value = out.milnor_route ? *out.milnor_route : *out.resolution_route;
    if (!out.agreement)
        throw internal_error("Behrend routes disagree: milnor " +
                             std::to_string(*out.milnor_route) + " vs resolution " +
                             std::to_string(*out.resolution_route));
    return out;
}

} // namespace cla
