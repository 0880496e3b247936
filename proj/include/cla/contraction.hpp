#pragma once

#include "cla/axioms.hpp"
#include "cla/cohomology.hpp"

namespace cla {

// Contraction data for homotopy transfer onto M = pi(L): a degree -1
// operator eta with
//   eta^2 = 0,   eta d eta = eta,   ae(eta x, y) = (-1)^{deg x} ae(x, eta y),
// and pi = 1 - (d eta + eta d) projecting onto the chosen representatives.
// The compatibility sign is the one the defining identities admit; see
// docs/formats.md for the convention note.
struct Contraction {
    Splitting split;

    const GradedSpace& h_space() const { return split.h_space; }
    const Matrix& eta() const { return split.eta; }
    const Matrix& iota() const { return split.iota; }
    const Matrix& proj() const { return split.proj; }
    const Matrix& pi() const { return split.pi; }
};

// Re-verifies every defining identity of a contraction on basis vectors.
inline AxiomReport verify_contraction(const LInftyStructure& S,
                                      const CyclicPairing& ae,
                                      const Contraction& C) {
    AxiomReport report;
    const GradedSpace& space = S.space();
    const std::size_t D = space.dim();
    const Matrix& eta = C.split.eta;
    const Matrix& d = C.split.d;

    auto is_zero = [](const Matrix& m) {
        for (const auto& x : m.a)
            if (x != 0) return false;
        return true;
    };

    if (!is_zero(eta * eta))
        report.violations.push_back({"contraction", "", "eta^2 != 0"});
    {
        Matrix ede = eta * (d * eta);
        if (!(ede == eta))
            report.violations.push_back({"contraction", "", "eta d eta != eta"});
    }
    {
        Matrix lhs = Matrix::identity(D) - (d * eta + eta * d);
        if (!(lhs == C.split.pi))
            report.violations.push_back(
                {"contraction", "", "pi != 1 - (d eta + eta d)"});
        if (!(C.split.pi * C.split.pi == C.split.pi))
            report.violations.push_back({"contraction", "", "pi^2 != pi"});
        if (!(C.split.pi == C.split.iota * C.split.proj))
            report.violations.push_back({"contraction", "", "pi != iota proj"});
    }
    {
        Matrix pi_iota = C.split.proj * C.split.iota;
        if (!(pi_iota == Matrix::identity(C.split.h_space.dim())))
            report.violations.push_back({"contraction", "", "proj iota != id"});
    }
    if (rank(C.split.pi) != C.split.h_space.dim())
        report.violations.push_back({"contraction", "", "rank pi != dim H"});

    // pairing compatibility on all basis pairs
    for (std::size_t x = 0; x < D; ++x)
        for (std::size_t y = 0; y < D; ++y) {
            Rat lhs = 0, rhs = 0;
            for (std::size_t r = 0; r < D; ++r) {
                if (eta.at(r, x) != 0)
                    lhs += eta.at(r, x) *
                           ae.eval(static_cast<int>(r), static_cast<int>(y));
                if (eta.at(r, y) != 0)
                    rhs += eta.at(r, y) *
                           ae.eval(static_cast<int>(x), static_cast<int>(r));
            }
            int sx = space.degree_of(static_cast<int>(x));
            if (sx % 2 != 0) rhs = -rhs;
            if (lhs != rhs)
                report.violations.push_back(
                    {"contraction pairing",
                     space.name(static_cast<int>(x)) + ", " +
                         space.name(static_cast<int>(y)),
                     format_rational(lhs) + " != " + format_rational(rhs)});
        }
    return report;
}

// Builds the contraction by exact linear algebra: pairing-compatible
// complements of boundaries and cycles, eta = d^{-1} on boundaries and zero
// elsewhere.  Every identity is re-verified before returning.
inline Contraction build_contraction(const LInftyStructure& S,
                                     const CyclicPairing& ae) {
    Contraction C{build_splitting(S, &ae)};
    AxiomReport check = verify_contraction(S, ae, C);
    if (!check.ok())
        throw internal_error("contraction construction failed: " +
                             check.summary());
    return C;
}

} // namespace cla
