#pragma once

#include "cla/power_series.hpp"
#include "cla/transfer.hpp"

namespace cla {

// The formal potential of a minimal cyclic structure with cohomology in
// degrees 1 and 2 only:
//   f(z) = sum_{n >= 2} (-1)^{n(n+1)/2} / (n+1)!  kappa(nu_n(z,...,z), z),
// a series starting with its cubic term.  Coordinates on H^1 are bound to
// the supplied variable names.
struct Potential {
    PowerSeries series;
    VarList vars;
};

// The Maurer-Cartan map in coordinates: F[k][j] is the component on the
// j-th basis element (of H^2) of
//   F_k(z) = (-1)^{k(k+1)/2} / k!  nu_k(z,...,z).
struct McMap {
    VarList vars;
    std::map<int, std::vector<Poly>> F;
};

inline VarList default_mc_vars(std::size_t m) {
    if (m == 1) return make_vars({"x"});
    if (m == 2) return make_vars({"x", "y"});
    if (m == 3) return make_vars({"x", "y", "z"});
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= m; ++i)
        names.push_back("x" + std::to_string(i));
    return make_vars(names);
}

inline void require_potential_signature(const TransferredStructure& T) {
    const GradedSpace& H = T.structure.space();
    for (int deg : H.degrees()) {
        if (H.dim(deg) == 0) continue;
        if (deg != 1 && deg != 2)
            throw input_error(
                "unsupported signature: cohomology in degree " +
                std::to_string(deg) +
                " (only degrees 1 and 2 are supported; H^0 and H^3 must vanish)");
    }
    if (T.structure.tables().count(1))
        throw input_error("potential requires a minimal structure (mu_1 = 0)");
}

inline int mc_sign(int n) { return ((n * (n + 1) / 2) % 2 == 0) ? 1 : -1; }

inline McMap mc_map(const TransferredStructure& T, int N,
                    VarList vars = nullptr) {
    require_potential_signature(T);
    const GradedSpace& H = T.structure.space();
    if (!vars) vars = default_mc_vars(H.indices(1).size());
    DiagonalMc diag = nu_diagonal_series(T, N, vars);
    McMap out;
    out.vars = vars;
    const auto& h2 = H.indices(2);
    for (const auto& [n, comps] : diag.parts) {
        std::vector<Poly> fk;
        fk.reserve(h2.size());
        bool nonzero = false;
        for (int j : h2) {
            Poly p = comps[j] * Rat(mc_sign(n));
            nonzero = nonzero || !p.is_zero();
            fk.push_back(std::move(p));
        }
        if (nonzero) out.F[n] = std::move(fk);
    }
    return out;
}

inline Potential potential(const TransferredStructure& T, int N,
                           VarList vars = nullptr) {
    require_potential_signature(T);
    const GradedSpace& H = T.structure.space();
    const auto& h1 = H.indices(1);
    const auto& h2 = H.indices(2);
    if (!vars) vars = default_mc_vars(h1.size());
    DiagonalMc diag = nu_diagonal_series(T, N, vars);

    Poly f = Poly::zero(vars);
    for (const auto& [n, comps] : diag.parts) {
        // (-1)^{n(n+1)/2}/(n+1) * kappa(A_n, z)  with A_n = nu_n(z..z)/n!
        Poly term = Poly::zero(vars);
        for (int j : h2) {
            if (comps[j].is_zero()) continue;
            for (std::size_t a = 0; a < h1.size(); ++a) {
                Rat k = T.kappa.eval(j, h1[a]);
                if (k != 0)
                    term += comps[j] * Poly::variable(vars, a) * k;
            }
        }
        term *= Rat(mc_sign(n), n + 1);
        f += term;
    }
    Potential out{PowerSeries(f, N + 1), vars};
    if (!out.series.base().truncate_above(2).is_zero())
        throw internal_error("potential acquired terms of degree below 3");
    return out;
}

// Verifies  d f = F  in coordinates: the partial derivative along each H^1
// coordinate must equal the kappa-dual component of the Maurer-Cartan map,
//   df/dx_a = sum_k kappa(e_a, F_k(z)),
// exactly through the shared truncation order.
inline AxiomReport check_df_equals_F(const TransferredStructure& T,
                                     const Potential& f, const McMap& F) {
    AxiomReport report;
    const GradedSpace& H = T.structure.space();
    const auto& h1 = H.indices(1);
    const auto& h2 = H.indices(2);
    int order = f.series.truncation_order() - 1;
    for (std::size_t a = 0; a < h1.size(); ++a) {
        Poly lhs = f.series.base().derivative(a).truncate_above(order);
        Poly rhs = Poly::zero(f.vars);
        for (const auto& [k, comps] : F.F) {
            for (std::size_t j = 0; j < h2.size(); ++j) {
                Rat kap = T.kappa.eval(h1[a], h2[j]);
                if (kap != 0 && !comps[j].is_zero())
                    rhs += comps[j] * kap;
            }
        }
        rhs = rhs.truncate_above(order);
        if (lhs != rhs)
            report.violations.push_back(
                {"df = F", (*f.vars)[a],
                 lhs.to_string() + " != " + rhs.to_string()});
    }
    return report;
}

// Formal partial derivatives of the potential, the presentation of the
// critical locus at the origin.
struct JacobianIdeal {
    std::vector<Poly> generators;
    VarList vars;
};

inline JacobianIdeal jacobian_ideal(const Potential& f) {
    JacobianIdeal out;
    out.vars = f.vars;
    int order = f.series.truncation_order() - 1;
    for (std::size_t a = 0; a < f.vars->size(); ++a)
        out.generators.push_back(
            f.series.base().derivative(a).truncate_above(order));
    return out;
}

} // namespace cla
