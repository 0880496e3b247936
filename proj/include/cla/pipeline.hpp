#pragma once

#include "cla/algebra_format.hpp"
#include "cla/axioms.hpp"
#include "cla/motive.hpp"
#include "cla/potential.hpp"
#include "cla/transfer.hpp"

namespace cla {

struct PipelineOptions {
    int axiom_arity = 4;       // depth of the validation checks
    int order = 12;            // initial truncation order for the potential
    int order_cap = 24;        // raise until the Milnor number stabilizes
    int transfer_arity = 5;    // stored arity of the transferred tables
};

struct PipelineResult {
    AlgebraData algebra;
    TransferredStructure transferred;
    Potential f;
    McMap F;
    MilnorData milnor;
    BehrendValue behrend;
    int used_order = 0;
    std::map<int, std::size_t> h_dims;
};

// The full chain: validate the input, transfer the structure to cohomology,
// expand the potential until the Milnor number is determined by the
// truncation, then evaluate the Behrend value.
inline PipelineResult run_pipeline(const AlgebraData& algebra,
                                   const PipelineOptions& opts = {}) {
    PipelineResult out;
    out.algebra = algebra;

    AxiomReport jac = check_jacobi(algebra.structure, opts.axiom_arity);
    if (!jac.ok())
        throw axiom_error("higher Jacobi identities fail: " + jac.summary());
    AxiomReport cyc =
        check_cyclic(algebra.structure, algebra.pairing, opts.axiom_arity);
    if (!cyc.ok())
        throw axiom_error("cyclic-pairing axioms fail: " + cyc.summary());

    Contraction C = build_contraction(algebra.structure, algebra.pairing);
    for (int deg : C.h_space().degrees())
        out.h_dims[deg] = C.h_space().dim(deg);
    for (const auto& [deg, dim] : out.h_dims)
        if (dim > 0 && deg != 1 && deg != 2)
            throw input_error(
                "unsupported signature: H^" + std::to_string(deg) +
                " is nonzero (the potential needs cohomology in degrees 1,2)");

    out.transferred = transfer(algebra.structure, algebra.pairing, C,
                               opts.transfer_arity);
    AxiomReport tc = check_transfer(out.transferred, opts.transfer_arity);
    if (!tc.ok())
        throw internal_error("transferred structure fails its axioms: " +
                             tc.summary());

    int N = opts.order;
    while (true) {
        out.f = potential(out.transferred, N);
        out.milnor = milnor_number(out.f.series.base());
        bool determined =
            out.milnor.mu.has_value() && *out.milnor.mu <= N;
        if (determined) break;
        if (N >= opts.order_cap) {
            if (!out.milnor.mu.has_value())
                throw input_error(
                    "the critical locus is not isolated (Milnor number "
                    "infinite at truncation order " + std::to_string(N) + ")");
            throw resource_error(
                "Milnor number did not stabilize below the truncation cap");
        }
        long long want = out.milnor.mu ? *out.milnor.mu + 2 : N + 4;
        N = static_cast<int>(
            std::min<long long>(opts.order_cap, std::max<long long>(N + 4, want)));
    }
    out.used_order = N;
    out.F = mc_map(out.transferred, N);

    out.behrend = behrend_value(out.f.series.base(), BehrendRoute::Auto);
    return out;
}

} // namespace cla
