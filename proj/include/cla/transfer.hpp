#pragma once

#include <functional>
#include <memory>

#include "cla/contraction.hpp"
#include "cla/polynomial.hpp"

namespace cla {

namespace detail {

// The structure maps in the suspension: q_k is graded symmetric for the
// shifted degrees deg - 1, with
//   q_k(s x_1, ..., s x_k) = (-1)^{sum_j (k-j) deg x_j} s mu_k(x_1, ..., x_k).
// All transfer combinatorics run here, where regrouping signs are plain
// Koszul signs and the recursion maps have even degree.
class ShiftedStructure {
public:
    explicit ShiftedStructure(const LInftyStructure& S) : space_(&S.space()) {
        for (const auto& [arity, table] : S.tables()) {
            for (const auto& [inputs, value] : table) {
                int expo = 0;
                for (std::size_t j = 0; j < inputs.size(); ++j)
                    expo += static_cast<int>(inputs.size() - 1 - j) *
                            space_->degree_of(inputs[j]);
                Vec v = value;
                if (expo % 2 != 0) v *= Rat(-1);
                q_[arity][inputs] = std::move(v);
            }
        }
    }

    const GradedSpace& space() const { return *space_; }
    const std::map<int, LInftyStructure::Table>& tables() const { return q_; }
    bool has_arity(int k) const { return q_.count(k) > 0; }

    int sort_symmetric(std::vector<int>& idx) const {
        int sign = 1;
        for (std::size_t pass = 0; pass + 1 < idx.size(); ++pass)
            for (std::size_t k = 0; k + 1 < idx.size(); ++k)
                if (idx[k] > idx[k + 1]) {
                    int du = space_->degree_of(idx[k]) - 1;
                    int dv = space_->degree_of(idx[k + 1]) - 1;
                    if ((du & 1) && (dv & 1)) sign = -sign;
                    std::swap(idx[k], idx[k + 1]);
                }
        for (std::size_t k = 0; k + 1 < idx.size(); ++k)
            if (idx[k] == idx[k + 1] && (space_->degree_of(idx[k]) - 1) % 2 != 0)
                return 0;
        return sign;
    }

    Vec eval_basis(int arity, std::vector<int> idx) const {
        int sign = sort_symmetric(idx);
        if (sign == 0) return {};
        auto tit = q_.find(arity);
        if (tit == q_.end()) return {};
        auto it = tit->second.find(idx);
        if (it == tit->second.end()) return {};
        Vec v = it->second;
        v *= Rat(sign);
        return v;
    }

    Vec eval(int arity, const std::vector<Vec>& args) const {
        Vec acc;
        std::vector<int> idx(arity);
        expand(args, 0, Rat(1), idx, acc);
        return acc;
    }

private:
    void expand(const std::vector<Vec>& args, std::size_t k, const Rat& coeff,
                std::vector<int>& idx, Vec& acc) const {
        if (k == args.size()) {
            Vec term = eval_basis(static_cast<int>(args.size()), idx);
            term *= coeff;
            acc += term;
            return;
        }
        for (const auto& [i, c] : args[k].c) {
            idx[k] = i;
            expand(args, k + 1, coeff * c, idx, acc);
        }
    }

    const GradedSpace* space_;
    std::map<int, LInftyStructure::Table> q_;
};

// Koszul sign (shifted degrees, symmetric convention) of regrouping the
// ascending position list into the concatenation of the partition blocks.
inline int regroup_sign(const std::vector<std::vector<int>>& blocks,
                        const std::vector<int>& shifted_degrees) {
    std::vector<int> perm;
    for (const auto& b : blocks)
        for (int p : b) perm.push_back(p);
    int sign = 1;
    for (std::size_t pass = 0; pass + 1 < perm.size(); ++pass)
        for (std::size_t k = 0; k + 1 < perm.size(); ++k)
            if (perm[k] > perm[k + 1]) {
                if ((shifted_degrees[perm[k]] & 1) &&
                    (shifted_degrees[perm[k + 1]] & 1))
                    sign = -sign;
                std::swap(perm[k], perm[k + 1]);
            }
    return sign;
}

// Enumerates set partitions of `positions` into at least two blocks, each
// block ascending, blocks ordered by their minima.
inline void partitions_into_blocks(
    const std::vector<int>& positions,
    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    std::vector<std::vector<int>> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (next == positions.size()) {
            if (blocks.size() >= 2) fn(blocks);
            return;
        }
        int p = positions[next];
        for (auto& b : blocks) {
            b.push_back(p);
            rec(next + 1);
            b.pop_back();
        }
        blocks.push_back({p});
        rec(next + 1);
        blocks.pop_back();
    };
    rec(0);
}

} // namespace detail

// The minimal cyclic structure transported to cohomology, with enough
// provenance kept around to extend diagonal evaluations to arbitrary order.
struct TransferredStructure {
    LInftyStructure structure;
    CyclicPairing kappa;

    struct Provenance {
        LInftyStructure source;
        CyclicPairing ae;
        Contraction contraction;
    };
    std::shared_ptr<const Provenance> origin;  // null for file-loaded data
};

inline CyclicPairing restrict_pairing(const CyclicPairing& ae,
                                      const Contraction& C) {
    const std::size_t D = C.split.d.rows;
    const std::size_t h = C.h_space().dim();
    CyclicPairing kappa(ae.dimension());
    for (std::size_t a = 0; a < h; ++a)
        for (std::size_t b = 0; b < h; ++b) {
            Rat acc = 0;
            for (std::size_t r = 0; r < D; ++r) {
                if (C.iota().at(r, a) == 0) continue;
                for (std::size_t s = 0; s < D; ++s) {
                    if (C.iota().at(s, b) == 0) continue;
                    acc += C.iota().at(r, a) * C.iota().at(s, b) *
                           ae.eval(static_cast<int>(r), static_cast<int>(s));
                }
            }
            if (acc != 0) kappa.set_raw(static_cast<int>(a),
                                        static_cast<int>(b), acc);
        }
    return kappa;
}

// Homotopy transfer: the transported operation on arguments z_1,...,z_k of
// M is p(Theta(full set)) where, over subsets S of argument positions,
//   Phi({i}) = iota z_i,       Phi(S) = eta Theta(S),
//   Theta(S) = sum over partitions of S into >= 2 blocks of
//              regroup_sign * q_{#blocks}(Phi(B_1), ..., Phi(B_k)).
// Everything is evaluated in the suspension and shifted back at the end.
inline TransferredStructure transfer(const LInftyStructure& S,
                                     const CyclicPairing& ae,
                                     const Contraction& C, int N,
                                     int arity_budget = 8) {
    if (N < 2) throw input_error("transfer order must be at least 2");
    if (N > arity_budget)
        throw resource_error("transfer order " + std::to_string(N) +
                             " exceeds the arity budget " +
                             std::to_string(arity_budget));
    const GradedSpace& space = S.space();
    const GradedSpace& H = C.h_space();
    const std::size_t D = space.dim();
    detail::ShiftedStructure q(S);

    bool eta_zero = true;
    for (const auto& x : C.eta().a) eta_zero = eta_zero && (x == 0);

    auto matrix_apply = [&](const Matrix& m, const Vec& v) {
        Vec out;
        for (const auto& [j, c] : v.c)
            for (std::size_t i = 0; i < m.rows; ++i) {
                Rat x = m.at(i, j);
                if (x != 0) out.add(static_cast<int>(i), c * x);
            }
        return out;
    };

    LInftyStructure T(H);
    for (int k = 2; k <= N; ++k) {
        // all sorted multi-indices of H-basis elements
        std::vector<int> cur;
        std::function<void(int)> rec_tuple = [&](int start) {
            if (static_cast<int>(cur.size()) == k) {
                // repeated even-degree elements are identically zero
                for (std::size_t i = 0; i + 1 < cur.size(); ++i)
                    if (cur[i] == cur[i + 1] &&
                        H.degree_of(cur[i]) % 2 == 0)
                        return;
                // shifted degrees per argument position
                std::vector<int> sdeg(k);
                std::vector<Vec> leaves(k);
                for (int i = 0; i < k; ++i) {
                    sdeg[i] = H.degree_of(cur[i]) - 1;
                    leaves[i] = matrix_apply(C.iota(), Vec::basis(cur[i]));
                }
                std::map<std::vector<int>, Vec> phi;
                std::function<const Vec&(const std::vector<int>&)> Phi =
                    [&](const std::vector<int>& sub) -> const Vec& {
                    auto it = phi.find(sub);
                    if (it != phi.end()) return it->second;
                    Vec value;
                    if (sub.size() == 1) {
                        value = leaves[sub[0]];
                    } else {
                        Vec theta;
                        detail::partitions_into_blocks(
                            sub, [&](const std::vector<std::vector<int>>& blocks) {
                                if (eta_zero) {
                                    for (const auto& b : blocks)
                                        if (b.size() > 1) return;
                                }
                                std::vector<Vec> args;
                                args.reserve(blocks.size());
                                for (const auto& b : blocks) {
                                    const Vec& bv = Phi(b);
                                    if (bv.is_zero()) return;
                                    args.push_back(bv);
                                }
                                int sign = detail::regroup_sign(blocks, sdeg);
                                Vec term =
                                    q.eval(static_cast<int>(blocks.size()), args);
                                term *= Rat(sign);
                                theta += term;
                            });
                        value = matrix_apply(C.eta(), theta);
                    }
                    auto [pos, inserted] = phi.emplace(sub, std::move(value));
                    return pos->second;
                };

                // Theta on the full set, then project
                Vec theta_full;
                std::vector<int> full(k);
                for (int i = 0; i < k; ++i) full[i] = i;
                detail::partitions_into_blocks(
                    full, [&](const std::vector<std::vector<int>>& blocks) {
                        if (eta_zero) {
                            for (const auto& b : blocks)
                                if (b.size() > 1) return;
                        }
                        std::vector<Vec> args;
                        args.reserve(blocks.size());
                        for (const auto& b : blocks) {
                            const Vec& bv = Phi(b);
                            if (bv.is_zero()) return;
                            args.push_back(bv);
                        }
                        int sign = detail::regroup_sign(blocks, sdeg);
                        Vec term = q.eval(static_cast<int>(blocks.size()), args);
                        term *= Rat(sign);
                        theta_full += term;
                    });
                Vec nu_shifted = matrix_apply(C.proj(), theta_full);
                if (!nu_shifted.is_zero()) {
                    // undo the suspension sign for this input tuple
                    int expo = 0;
                    for (int j = 0; j < k; ++j)
                        expo += (k - 1 - j) * H.degree_of(cur[j]);
                    if (expo % 2 != 0) nu_shifted *= Rat(-1);
                    T.set_entry(k, cur, nu_shifted);
                }
                return;
            }
            for (int i = start; i < static_cast<int>(H.dim()); ++i) {
                cur.push_back(i);
                rec_tuple(i);
                cur.pop_back();
            }
        };
        rec_tuple(0);
    }

    TransferredStructure out;
    out.structure = std::move(T);
    out.kappa = restrict_pairing(ae, C);
    out.origin = std::make_shared<const TransferredStructure::Provenance>(
        TransferredStructure::Provenance{S, ae, C});
    return out;
}

inline AxiomReport check_transfer(const TransferredStructure& T, int n_max) {
    AxiomReport jac = check_jacobi(T.structure, n_max);
    AxiomReport cyc = check_cyclic(T.structure, T.kappa, n_max);
    AxiomReport merged;
    merged.checked_arities = jac.checked_arities;
    merged.violations = jac.violations;
    merged.violations.insert(merged.violations.end(), cyc.violations.begin(),
                             cyc.violations.end());
    return merged;
}

// Diagonal Maurer-Cartan data: parts[n] holds, for every basis element of
// the cohomology space, the component of (1/n!) nu_n(z,...,z) as a
// homogeneous degree-n polynomial in the coordinates of z on H^1.
struct DiagonalMc {
    VarList vars;
    std::map<int, std::vector<Poly>> parts;
};

inline DiagonalMc nu_diagonal_series(const TransferredStructure& T, int N,
                                     VarList vars) {
    const GradedSpace& H = T.structure.space();
    const auto& h1 = H.indices(1);
    if (vars->size() != h1.size())
        throw internal_error("variable list does not match dim H^1");
    DiagonalMc out;
    out.vars = vars;

    const std::size_t dimH = H.dim();
    auto poly_zero_vec = [&]() {
        return std::vector<Poly>(dimH, Poly::zero(vars));
    };

    if (!T.origin) {
        // minimal structure: expand the stored tables on the diagonal
        for (const auto& [arity, table] : T.structure.tables()) {
            if (arity < 2 || arity > N) continue;
            for (const auto& [inputs, value] : table) {
                bool all_h1 = true;
                for (int i : inputs)
                    all_h1 = all_h1 && H.degree_of(i) == 1;
                if (!all_h1) continue;
                // multiplicity factor 1 / prod(mult!)
                Rat coeff = 1;
                Exponents e(vars->size(), 0);
                int run = 1;
                for (std::size_t j = 0; j < inputs.size(); ++j) {
                    auto pos = std::find(h1.begin(), h1.end(), inputs[j]);
                    e[pos - h1.begin()] += 1;
                    if (j > 0 && inputs[j] == inputs[j - 1])
                        coeff /= ++run;
                    else
                        run = 1;
                }
                Poly mono = Poly::monomial(vars, e, coeff);
                auto& dst = out.parts.try_emplace(arity, poly_zero_vec()).first->second;
                for (const auto& [i, c] : value.c)
                    dst[i] += mono * c;
            }
        }
        return out;
    }

    // full recursion through the contraction: w = iota z + eta qhat(w)
    const auto& P = *T.origin;
    const GradedSpace& L = P.source.space();
    const std::size_t D = L.dim();
    detail::ShiftedStructure q(P.source);

    std::vector<Poly> w(D, Poly::zero(vars));
    std::vector<Poly> base(D, Poly::zero(vars));
    for (std::size_t a = 0; a < h1.size(); ++a) {
        Poly xa = Poly::variable(vars, a);
        for (std::size_t r = 0; r < D; ++r) {
            Rat c = P.contraction.iota().at(r, h1[a]);
            if (c != 0) base[r] += xa * c;
        }
    }

    auto qhat = [&](const std::vector<Poly>& v) {
        std::vector<Poly> acc(D, Poly::zero(vars));
        for (const auto& [arity, table] : q.tables()) {
            if (arity < 2) continue;
            for (const auto& [inputs, value] : table) {
                // all inputs must be of degree 1 for v supported on L^1;
                // the support check below covers the general case
                Poly prod = Poly::constant(vars, 1);
                bool zero = false;
                // symmetric multiplicity: ordered expansions / k! ->
                // multinomial / k! = 1 / prod(mult!)
                Rat coeff = Rat(1);
                int run = 1;
                for (std::size_t j = 0; j < inputs.size(); ++j) {
                    if (v[inputs[j]].is_zero()) { zero = true; break; }
                    prod = (prod * v[inputs[j]]).truncate_above(N);
                    if (j > 0 && inputs[j] == inputs[j - 1])
                        coeff /= ++run;
                    else
                        run = 1;
                }
                if (zero || prod.is_zero()) continue;
                for (const auto& [i, c] : value.c)
                    acc[i] += prod * (c * coeff);
            }
        }
        return acc;
    };

    for (int iter = 0; iter <= N; ++iter) {
        std::vector<Poly> qw = qhat(w);
        std::vector<Poly> next(D, Poly::zero(vars));
        const Matrix& eta = P.contraction.eta();
        for (std::size_t j = 0; j < D; ++j) {
            if (qw[j].is_zero()) continue;
            for (std::size_t i = 0; i < D; ++i) {
                Rat c = eta.at(i, j);
                if (c != 0) next[i] += qw[j] * c;
            }
        }
        for (std::size_t i = 0; i < D; ++i)
            next[i] = (next[i] + base[i]).truncate_above(N);
        if (next == w) break;
        w = std::move(next);
    }

    std::vector<Poly> qw = qhat(w);
    // project and split into homogeneous parts, undoing the suspension sign
    for (std::size_t a = 0; a < dimH; ++a) {
        Poly comp = Poly::zero(vars);
        for (std::size_t j = 0; j < D; ++j) {
            Rat c = P.contraction.proj().at(a, j);
            if (c != 0 && !qw[j].is_zero()) comp += qw[j] * c;
        }
        if (comp.is_zero()) continue;
        for (int n = 2; n <= N; ++n) {
            Poly part = comp.homogeneous_part(n);
            if (part.is_zero()) continue;
            int sign = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
            auto& dst = out.parts.try_emplace(n, poly_zero_vec()).first->second;
            dst[a] += part * Rat(sign);
        }
    }
    return out;
}

} // namespace cla
