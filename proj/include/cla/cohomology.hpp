#pragma once

#include <set>
#include <string>
#include <vector>

#include "cla/linear_algebra.hpp"
#include "cla/linfty.hpp"

namespace cla {

namespace detail {

// Incremental row-reduction helper: tracks a reduced spanning set and
// accepts a new vector only when it enlarges the span.
class SpanTracker {
public:
    // reduces v against the current rows; returns the residue
    std::vector<Rat> reduce(std::vector<Rat> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rat& lead = v[pivots_[r]];
            if (lead == 0) continue;
            Rat f = lead;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] -= f * rows_[r][j];
        }
        return v;
    }

    bool insert(const std::vector<Rat>& v) {
        std::vector<Rat> res = reduce(v);
        std::size_t p = 0;
        while (p < res.size() && res[p] == 0) ++p;
        if (p == res.size()) return false;
        Rat inv = Rat(1) / res[p];
        for (auto& x : res) x *= inv;
        // keep rows reduced against the new one
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rat f = rows_[r][p];
            if (f == 0) continue;
            for (std::size_t j = 0; j < res.size(); ++j)
                rows_[r][j] -= f * res[j];
        }
        rows_.push_back(std::move(res));
        pivots_.push_back(p);
        return true;
    }

    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::vector<Rat>> rows_;
    std::vector<std::size_t> pivots_;
};

// First-pivot deterministic basis extension: picks candidates (in order)
// that extend span(existing); returns their indices.
inline std::vector<std::size_t> extend_basis(
    const std::vector<std::vector<Rat>>& existing,
    const std::vector<std::vector<Rat>>& candidates) {
    SpanTracker tracker;
    for (const auto& v : existing)
        if (!tracker.insert(v))
            throw internal_error("existing basis vectors are dependent");
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (tracker.insert(candidates[i]))
            picked.push_back(i);
    return picked;
}

} // namespace detail

// Exact splitting of a complex into boundaries, chosen cohomology
// representatives and a complement of the cycles:
//   L^i = B^i + H^i + C^i,   d : C^i -> B^{i+1} an isomorphism.
// With a pairing supplied, the complements are chosen compatibly:
//   ae(C, C) = 0 and ae(H, C) = 0 in complementary degrees,
// which is exactly what the contraction operator of the transfer needs.
struct Splitting {
    GradedSpace h_space;                  // fresh basis h<deg>_<k>
    Matrix d;                             // D x D differential
    Matrix iota;                          // D x dimH, representatives
    Matrix proj;                          // dimH x D, projection along B + C
    Matrix eta;                           // D x D, inverse of d on B, 0 on H + C
    Matrix pi;                            // D x D, iota * proj
    std::vector<int> h_degree;            // degree per H basis element
};

inline Matrix differential_matrix(const LInftyStructure& S) {
    std::size_t D = S.space().dim();
    Matrix d(D, D);
    for (std::size_t j = 0; j < D; ++j) {
        Vec image = S.eval_basis(1, {static_cast<int>(j)});
        for (const auto& [i, c] : image.c)
            d.at(i, j) = c;
    }
    return d;
}

inline Splitting build_splitting(const LInftyStructure& S,
                                 const CyclicPairing* ae) {
    const GradedSpace& space = S.space();
    const std::size_t D = space.dim();
    Matrix d = differential_matrix(S);
    {
        Matrix dd = d * d;
        for (const auto& x : dd.a)
            if (x != 0)
                throw axiom_error(
                    "mu_1 is not a differential (mu_1*mu_1 != 0); "
                    "see the arity-1 higher Jacobi identity");
    }

    auto degree_indices = [&](int deg) { return space.indices(deg); };
    auto local_dim = [&](int deg) { return space.dim(deg); };

    // local basis vector of degree deg from global column
    auto d_block = [&](int deg) {
        // matrix of d : L^deg -> L^{deg+1} in local coordinates
        const auto& from = degree_indices(deg);
        const auto& to = degree_indices(deg + 1);
        Matrix m(to.size(), from.size());
        for (std::size_t j = 0; j < from.size(); ++j)
            for (std::size_t i = 0; i < to.size(); ++i)
                m.at(i, j) = d.at(to[i], from[j]);
        return m;
    };

    std::vector<int> degrees = space.degrees();
    std::map<int, std::vector<std::vector<Rat>>> B, Z, H, C;

    for (int deg : degrees) {
        std::size_t n = local_dim(deg);
        // boundaries: image of d from degree deg-1
        std::vector<std::vector<Rat>> b_vectors;
        if (local_dim(deg - 1) > 0) {
            Matrix dm = d_block(deg - 1);
            detail::SpanTracker tracker;
            for (std::size_t j = 0; j < dm.cols; ++j) {
                std::vector<Rat> col(n);
                for (std::size_t i = 0; i < n; ++i) col[i] = dm.at(i, j);
                bool nonzero = false;
                for (const auto& x : col) nonzero = nonzero || x != 0;
                if (nonzero && tracker.insert(col))
                    b_vectors.push_back(col);
            }
        }
        B[deg] = std::move(b_vectors);
        // cycles: kernel of d on degree deg
        if (local_dim(deg + 1) > 0) {
            Z[deg] = kernel_basis(d_block(deg));
        } else {
            Z[deg].clear();
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Rat> e(n, Rat(0));
                e[i] = 1;
                Z[deg].push_back(std::move(e));
            }
        }
    }

    auto pairing_block = [&](int di, int dj) {
        const auto& bi = degree_indices(di);
        const auto& bj = degree_indices(dj);
        Matrix P(bi.size(), bj.size());
        for (std::size_t a = 0; a < bi.size(); ++a)
            for (std::size_t b = 0; b < bj.size(); ++b)
                P.at(a, b) = ae->eval(bi[a], bj[b]);
        return P;
    };

    auto identity_candidates = [&](std::size_t n) {
        std::vector<std::vector<Rat>> out;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rat> e(n, Rat(0));
            e[i] = 1;
            out.push_back(std::move(e));
        }
        return out;
    };

    auto pick = [&](const std::vector<std::vector<Rat>>& existing,
                    const std::vector<std::vector<Rat>>& candidates) {
        std::vector<std::vector<Rat>> out;
        for (auto idx : detail::extend_basis(existing, candidates))
            out.push_back(candidates[idx]);
        return out;
    };

    // subspace cut out by orthogonality against `testers` (rows, in degree
    // dj) under the pairing block P (di x dj): returns vectors in degree di
    auto orthogonal_subspace = [&](const std::vector<std::vector<Rat>>& testers,
                                   const Matrix& P_di_dj) {
        std::size_t n = P_di_dj.rows;
        if (testers.empty()) return identity_candidates(n);
        Matrix eqs(testers.size(), n);
        for (std::size_t r = 0; r < testers.size(); ++r)
            for (std::size_t i = 0; i < n; ++i) {
                Rat acc = 0;
                for (std::size_t j = 0; j < P_di_dj.cols; ++j)
                    acc += P_di_dj.at(i, j) * testers[r][j];
                eqs.at(r, i) = acc;
            }
        return kernel_basis(eqs);
    };

    auto intersect = [&](const std::vector<std::vector<Rat>>& U,
                         const std::vector<std::vector<Rat>>& W,
                         std::size_t n) {
        // span(U) intersect span(W) via kernel of [U^T | -W^T]
        Matrix m(n, U.size() + W.size());
        for (std::size_t j = 0; j < U.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) m.at(i, j) = U[j][i];
        for (std::size_t j = 0; j < W.size(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                m.at(i, U.size() + j) = -W[j][i];
        std::vector<std::vector<Rat>> out;
        for (const auto& k : kernel_basis(m)) {
            std::vector<Rat> v(n, Rat(0));
            bool nonzero = false;
            for (std::size_t j = 0; j < U.size(); ++j)
                for (std::size_t i = 0; i < n; ++i) v[i] += k[j] * U[j][i];
            for (const auto& x : v) nonzero = nonzero || x != 0;
            if (nonzero) out.push_back(std::move(v));
        }
        return out;
    };

    if (!ae) {
        for (int deg : degrees) {
            std::size_t n = local_dim(deg);
            H[deg] = pick(B[deg], Z[deg]);
            std::vector<std::vector<Rat>> zh = B[deg];
            for (const auto& v : H[deg]) zh.push_back(v);
            C[deg] = pick(zh, identity_candidates(n));
        }
    } else {
        // process complementary degree pairs (i, 3 - i)
        std::set<int> done;
        const int dpair = ae->dimension();
        for (int deg : degrees) {
            int i = std::min(deg, dpair - deg);
            int j = dpair - i;
            if (done.count(i)) continue;
            done.insert(i);
            std::size_t ni = local_dim(i), nj = local_dim(j);
            if (ni == 0 && nj == 0) continue;
            if (ni != nj)
                throw input_error(
                    "pairing cannot be perfect: dim L^" + std::to_string(i) +
                    " != dim L^" + std::to_string(j));
            Matrix P = pairing_block(i, j);
            if (rank(P) != ni)
                throw input_error("pairing is degenerate between degrees " +
                                  std::to_string(i) + " and " + std::to_string(j));
            // C_i free, then C_j inside the annihilator of C_i
            C[i] = pick(Z[i], identity_candidates(ni));
            {
                Matrix Pt(nj, ni);
                for (std::size_t a = 0; a < nj; ++a)
                    for (std::size_t b = 0; b < ni; ++b)
                        Pt.at(a, b) = P.at(b, a);
                auto Wj = orthogonal_subspace(C[i], Pt);
                C[j] = pick(Z[j], Wj);
                if (C[j].size() != nj - Z[j].size())
                    throw input_error(
                        "no pairing-compatible splitting found in degree " +
                        std::to_string(j));
            }
            // H_i inside annihilator of C_j, H_j inside annihilator of C_i
            {
                auto Wi = orthogonal_subspace(C[j], P);
                auto V = intersect(Z[i], Wi, ni);
                H[i] = pick(B[i], V);
                if (H[i].size() != Z[i].size() - B[i].size())
                    throw input_error(
                        "no pairing-compatible splitting found in degree " +
                        std::to_string(i));
            }
            {
                Matrix Pt(nj, ni);
                for (std::size_t a = 0; a < nj; ++a)
                    for (std::size_t b = 0; b < ni; ++b)
                        Pt.at(a, b) = P.at(b, a);
                auto Wj = orthogonal_subspace(C[i], Pt);
                auto V = intersect(Z[j], Wj, nj);
                H[j] = pick(B[j], V);
                if (H[j].size() != Z[j].size() - B[j].size())
                    throw input_error(
                        "no pairing-compatible splitting found in degree " +
                        std::to_string(j));
            }
        }
    }

    // assemble global matrices
    Splitting out;
    out.d = d;
    std::size_t dimH = 0;
    for (int deg : degrees) dimH += H[deg].size();
    out.iota = Matrix(D, dimH);
    out.proj = Matrix(dimH, D);
    out.eta = Matrix(D, D);

    std::size_t hcol = 0;
    for (int deg : degrees) {
        const auto& idx = degree_indices(deg);
        std::size_t n = idx.size();
        if (n == 0) continue;
        // chosen basis: B | H | C in local coordinates
        std::vector<std::vector<Rat>> chosen;
        for (const auto& v : B[deg]) chosen.push_back(v);
        for (const auto& v : H[deg]) chosen.push_back(v);
        for (const auto& v : C[deg]) chosen.push_back(v);
        if (chosen.size() != n)
            throw internal_error("splitting does not span a graded piece");
        Matrix Sm(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                Sm.at(i, j) = chosen[j][i];
        auto Sinv = inverse(Sm);
        if (!Sinv) throw internal_error("splitting basis is singular");

        std::size_t nb = B[deg].size(), nh = H[deg].size(), nc = C[deg].size();
        // iota / proj blocks
        for (std::size_t k = 0; k < nh; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                out.iota.at(idx[i], hcol + k) = H[deg][k][i];
                out.proj.at(hcol + k, idx[i]) = Sinv->at(nb + k, i);
            }
            out.h_degree.push_back(deg);
        }
        // eta on boundaries: eta(b) = preimage in C^{deg-1}
        if (nb > 0) {
            const auto& below = degree_indices(deg - 1);
            const auto& Cb = C[deg - 1];
            // solve d * (C-combination) = b for every chosen B vector
            Matrix dc(n, Cb.size());
            for (std::size_t j = 0; j < Cb.size(); ++j) {
                // global image of the C vector under d
                std::vector<Rat> g(D, Rat(0));
                for (std::size_t i = 0; i < below.size(); ++i)
                    g[below[i]] = Cb[j][i];
                auto img = d.apply(g);
                for (std::size_t i = 0; i < n; ++i)
                    dc.at(i, j) = img[idx[i]];
            }
            for (std::size_t k = 0; k < nb; ++k) {
                auto sol = solve(dc, B[deg][k]);
                if (!sol) throw internal_error("boundary has no preimage");
                // eta column for each global basis vector is assembled below
                // via the change of basis; store image of the chosen B vector
                std::vector<Rat> eta_img(D, Rat(0));
                for (std::size_t j = 0; j < Cb.size(); ++j)
                    for (std::size_t i = 0; i < below.size(); ++i)
                        eta_img[below[i]] += (*sol)[j] * Cb[j][i];
                // eta(standard basis) = eta(chosen) * S^{-1}
                for (std::size_t col = 0; col < n; ++col) {
                    Rat f = Sinv->at(k, col);
                    if (f == 0) continue;
                    for (std::size_t r = 0; r < D; ++r)
                        out.eta.at(r, idx[col]) += f * eta_img[r];
                }
            }
        }
        hcol += nh;
    }

    out.pi = out.iota * out.proj;

    GradedSpace hs;
    std::map<int, int> counter;
    for (int deg : out.h_degree) {
        int k = ++counter[deg];
        std::string stem = deg < 0 ? "hm" + std::to_string(-deg)
                                   : "h" + std::to_string(deg);
        hs.add_element(stem + "_" + std::to_string(k), deg);
    }
    out.h_space = hs;
    return out;
}

struct CohomologyResult {
    GradedSpace h_space;
    Matrix iota;  // representatives
    Matrix proj;  // projection with proj * iota = id
};

inline CohomologyResult cohomology(const LInftyStructure& S) {
    Splitting sp = build_splitting(S, nullptr);
    return {sp.h_space, sp.iota, sp.proj};
}

} // namespace cla
