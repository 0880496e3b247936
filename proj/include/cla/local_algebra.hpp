#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "cla/polynomial.hpp"
#include "cla/power_series.hpp"

namespace cla {

// Local monomial order (anti-graded lexicographic): lower total degree is
// larger, ties broken lexicographically.  1 is the largest monomial, which
// makes this a local order; division must therefore use Mora's reduction
// with ecart bookkeeping rather than plain polynomial division.
inline bool local_greater(const Exponents& a, const Exponents& b) {
    int da = exp_total(a), db = exp_total(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

struct LocalTerm {
    Exponents e;
    Rat c;
};

// Terms sorted leading-first for the local order.
struct LocalPoly {
    std::vector<LocalTerm> t;

    bool is_zero() const { return t.empty(); }
    const LocalTerm& lead() const { return t.front(); }

    int ecart() const {
        int lead_deg = exp_total(t.front().e);
        int max_deg = lead_deg;
        for (const auto& term : t)
            max_deg = std::max(max_deg, exp_total(term.e));
        return max_deg - lead_deg;
    }

    static LocalPoly from_poly(const Poly& p) {
        LocalPoly out;
        for (const auto& [e, c] : p.terms())
            out.t.push_back({e, c});
        std::sort(out.t.begin(), out.t.end(),
                  [](const LocalTerm& x, const LocalTerm& y) {
                      return local_greater(x.e, y.e);
                  });
        return out;
    }

    Poly to_poly(const VarList& vars) const {
        Poly p = Poly::zero(vars);
        for (const auto& term : t)
            p.add_term(term.e, term.c);
        return p;
    }
};

namespace detail {

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// h -= (lt(h)/lt(g)) * g, cancelling the leading term of h.
inline LocalPoly cancel_lead(const LocalPoly& h, const LocalPoly& g) {
    Exponents shift = h.lead().e;
    for (std::size_t i = 0; i < shift.size(); ++i)
        shift[i] -= g.lead().e[i];
    Rat factor = h.lead().c / g.lead().c;
    // merge h - factor * x^shift * g
    std::vector<LocalTerm> merged;
    std::size_t i = 0, j = 0;
    auto shifted = [&](std::size_t jj) {
        Exponents e = g.t[jj].e;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += shift[k];
        return e;
    };
    while (i < h.t.size() || j < g.t.size()) {
        if (j >= g.t.size()) {
            merged.push_back(h.t[i++]);
            continue;
        }
        Exponents ge = shifted(j);
        if (i >= h.t.size()) {
            merged.push_back({ge, -factor * g.t[j].c});
            ++j;
            continue;
        }
        if (h.t[i].e == ge) {
            Rat c = h.t[i].c - factor * g.t[j].c;
            if (c != 0) merged.push_back({h.t[i].e, c});
            ++i;
            ++j;
        } else if (local_greater(h.t[i].e, ge)) {
            merged.push_back(h.t[i++]);
        } else {
            merged.push_back({ge, -factor * g.t[j].c});
            ++j;
        }
    }
    LocalPoly out;
    out.t = std::move(merged);
    return out;
}

} // namespace detail

// Mora weak normal form: repeatedly cancels the leading term against the
// divisor of smallest ecart, adding the intermediate result to the divisor
// list whenever its ecart is smaller; terminates for polynomial input.
// The result h satisfies u*f = sum q_i g_i + h for a unit u, and no leading
// monomial of G divides lm(h).
inline LocalPoly mora_normal_form(LocalPoly h, std::vector<LocalPoly> T,
                                  long long step_budget = 2000000) {
    long long steps = 0;
    while (!h.is_zero()) {
        int best = -1;
        int best_ecart = 0;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (!detail::divides(T[i].lead().e, h.lead().e)) continue;
            int e = T[i].ecart();
            if (best < 0 || e < best_ecart) {
                best = static_cast<int>(i);
                best_ecart = e;
            }
        }
        if (best < 0) break;
        if (best_ecart > h.ecart())
            T.push_back(h);
        h = detail::cancel_lead(h, T[best]);
        if (++steps > step_budget)
            throw internal_error("Mora reduction exceeded its step budget");
    }
    return h;
}

inline Poly local_normal_form(const Poly& p, const std::vector<Poly>& basis) {
    std::vector<LocalPoly> T;
    for (const auto& g : basis)
        if (!g.is_zero()) T.push_back(LocalPoly::from_poly(g));
    return mora_normal_form(LocalPoly::from_poly(p), T).to_poly(p.vars());
}

// Standard basis via Buchberger completion with Mora reduction.  The S-pair
// queue is processed in a fixed deterministic order.
inline std::vector<Poly> standard_basis(const std::vector<Poly>& generators,
                                        std::size_t basis_cap = 512) {
    VarList vars;
    std::vector<LocalPoly> S;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        if (!vars) vars = g.vars();
        S.push_back(LocalPoly::from_poly(g));
    }
    if (S.empty()) return {};

    struct Pair {
        std::size_t i, j;
        int lcm_deg;
    };
    auto lcm_of = [](const Exponents& a, const Exponents& b) {
        Exponents e(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) e[k] = std::max(a[k], b[k]);
        return e;
    };
    std::vector<Pair> queue;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            Exponents l = lcm_of(S[i].lead().e, S[j].lead().e);
            queue.push_back({i, j, exp_total(l)});
        }
        std::stable_sort(queue.begin(), queue.end(),
                         [](const Pair& a, const Pair& b) {
                             if (a.lcm_deg != b.lcm_deg)
                                 return a.lcm_deg < b.lcm_deg;
                             if (a.j != b.j) return a.j < b.j;
                             return a.i < b.i;
                         });
    };
    for (std::size_t j = 1; j < S.size(); ++j) push_pairs(j);

    while (!queue.empty()) {
        Pair pr = queue.front();
        queue.erase(queue.begin());
        const LocalPoly& f = S[pr.i];
        const LocalPoly& g = S[pr.j];
        Exponents l = lcm_of(f.lead().e, g.lead().e);
        // spoly
        auto scaled = [&](const LocalPoly& p) {
            Exponents shift = l;
            for (std::size_t k = 0; k < shift.size(); ++k)
                shift[k] -= p.lead().e[k];
            LocalPoly out;
            for (const auto& term : p.t) {
                Exponents e = term.e;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += shift[k];
                out.t.push_back({e, term.c / p.lead().c});
            }
            return out;
        };
        LocalPoly sf = scaled(f), sg = scaled(g);
        // sf - sg, term-merged
        LocalPoly diff;
        {
            std::size_t a = 0, b = 0;
            while (a < sf.t.size() || b < sg.t.size()) {
                if (a >= sf.t.size()) {
                    diff.t.push_back({sg.t[b].e, -sg.t[b].c});
                    ++b;
                } else if (b >= sg.t.size()) {
                    diff.t.push_back(sf.t[a++]);
                } else if (sf.t[a].e == sg.t[b].e) {
                    Rat c = sf.t[a].c - sg.t[b].c;
                    if (c != 0) diff.t.push_back({sf.t[a].e, c});
                    ++a;
                    ++b;
                } else if (local_greater(sf.t[a].e, sg.t[b].e)) {
                    diff.t.push_back(sf.t[a++]);
                } else {
                    diff.t.push_back({sg.t[b].e, -sg.t[b].c});
                    ++b;
                }
            }
        }
        if (diff.is_zero()) continue;
        LocalPoly h = mora_normal_form(diff, S);
        if (h.is_zero()) continue;
        // normalize the leading coefficient for reproducible output
        Rat inv = Rat(1) / h.lead().c;
        for (auto& term : h.t) term.c *= inv;
        S.push_back(h);
        if (S.size() > basis_cap)
            throw resource_error("standard basis exceeded the size cap");
        push_pairs(S.size() - 1);
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another one
    std::vector<Poly> out;
    for (std::size_t i = 0; i < S.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < S.size(); ++j) {
            if (i == j) continue;
            if (detail::divides(S[j].lead().e, S[i].lead().e) &&
                !(S[j].lead().e == S[i].lead().e && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) out.push_back(S[i].to_poly(vars));
    }
    return out;
}

inline std::vector<Exponents> leading_ideal(const std::vector<Poly>& basis) {
    std::vector<Exponents> lms;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        LocalPoly lp = LocalPoly::from_poly(g);
        lms.push_back(lp.lead().e);
    }
    return lms;
}

// Invariants of an isolated critical point: the dimension of the local
// Jacobian quotient, a monomial basis of it, and the finite-determinacy
// bound mu + 1.
struct MilnorData {
    std::optional<long long> mu;  // empty means infinite
    bool smooth = false;
    std::vector<Exponents> monomial_basis;
    std::optional<long long> determinacy;

    bool isolated() const { return mu.has_value(); }
};

// Counts monomials outside the monomial ideal; empty when infinite.
inline std::optional<std::vector<Exponents>> staircase(
    const std::vector<Exponents>& lms, std::size_t nvars) {
    std::vector<int> bound(nvars, -1);
    for (const auto& e : lms) {
        for (std::size_t i = 0; i < nvars; ++i) {
            bool pure = e[i] > 0;
            for (std::size_t j = 0; j < nvars && pure; ++j)
                if (j != i && e[j] != 0) pure = false;
            if (pure && (bound[i] < 0 || e[i] < bound[i])) bound[i] = e[i];
        }
        if (exp_total(e) == 0) {
            // 1 is in the ideal: quotient is zero
            return std::vector<Exponents>{};
        }
    }
    for (std::size_t i = 0; i < nvars; ++i)
        if (bound[i] < 0) return std::nullopt;
    std::vector<Exponents> basis;
    Exponents cur(nvars, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == nvars) {
            for (const auto& lm : lms)
                if (detail::divides(lm, cur)) return;
            basis.push_back(cur);
            return;
        }
        for (int e = 0; e < bound[k]; ++e) {
            cur[k] = e;
            rec(k + 1);
        }
        cur[k] = 0;
    };
    rec(0);
    std::sort(basis.begin(), basis.end(), GrlexLess());
    return basis;
}

inline MilnorData milnor_number(const Poly& f) {
    MilnorData out;
    const std::size_t m = f.num_vars();
    std::vector<Poly> partials;
    bool smooth = f.constant_term() != 0;
    for (std::size_t i = 0; i < m; ++i) {
        Poly d = f.derivative(i);
        if (d.constant_term() != 0) smooth = true;
        if (!d.is_zero()) partials.push_back(d);
    }
    if (smooth) {
        out.mu = 0;
        out.smooth = true;
        out.determinacy = 1;
        return out;
    }
    if (m == 0) {
        // the quotient is the ground field itself
        out.mu = 1;
        out.monomial_basis = {Exponents{}};
        out.determinacy = 2;
        return out;
    }
    if (partials.empty()) {
        out.mu = std::nullopt;  // the whole space is critical
        return out;
    }
    std::vector<Poly> sb = standard_basis(partials);
    auto lms = leading_ideal(sb);
    auto basis = staircase(lms, m);
    if (!basis) {
        out.mu = std::nullopt;
        return out;
    }
    out.mu = static_cast<long long>(basis->size());
    out.monomial_basis = std::move(*basis);
    out.determinacy = *out.mu + 1;
    return out;
}

inline long long determinacy_bound(const MilnorData& md) {
    if (!md.mu)
        throw input_error("no determinacy bound: the singularity is not isolated");
    return *md.mu + 1;
}

} // namespace cla
