#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cla/cohomology.hpp"
#include "cla/linfty.hpp"

namespace cla {

// Violations are data, not errors: a check returns everything it found and
// the caller decides what to do with a nonempty list.
struct AxiomViolation {
    std::string identity;
    std::string arguments;
    std::string residual;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    std::vector<int> checked_arities;

    bool ok() const { return violations.empty(); }

    std::string summary() const {
        if (ok()) return "all identities hold";
        std::ostringstream os;
        os << violations.size() << " violation(s):";
        for (const auto& v : violations)
            os << "\n  " << v.identity << " on (" << v.arguments
               << "): " << v.residual;
        return os.str();
    }
};

namespace detail {

inline void multisets(int dim, int n, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(cur.size()) == n) {
        fn(cur);
        return;
    }
    int start = cur.empty() ? 0 : cur.back();
    for (int i = start; i < dim; ++i) {
        cur.push_back(i);
        multisets(dim, n, cur, fn);
        cur.pop_back();
    }
}

inline std::string tuple_names(const GradedSpace& space,
                               const std::vector<int>& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ", ";
        out += space.name(idx[i]);
    }
    return out;
}

} // namespace detail

// Evaluates the higher Jacobi identity of weight n on a fixed argument
// tuple: the double sum over l and (l, n-l) shuffles of
//   sign * mu_{n-l+1}( mu_l(a_{s(1)},...,a_{s(l)}), a_{s(l+1)},...,a_{s(n)} )
// with sign = parity(s) * (-1)^{(n-l+1)(l-1)} * koszul(s).
inline Vec jacobi_residual(const LInftyStructure& S, const std::vector<int>& args) {
    const int n = static_cast<int>(args.size());
    std::vector<int> degrees(n);
    for (int i = 0; i < n; ++i) degrees[i] = S.space().degree_of(args[i]);

    Vec residual;
    for (int l = 1; l <= n; ++l) {
        int outer = n - l + 1;
        if (!S.tables().count(l) || !S.tables().count(outer)) continue;
        int arity_sign = ((outer * (l - 1)) % 2 == 0) ? 1 : -1;
        // shuffles = subsets of positions of size l, both halves ascending
        std::vector<int> subset;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(subset.size()) == l) {
                std::vector<int> perm = subset;
                for (int p = 0; p < n; ++p) {
                    bool used = false;
                    for (int q : subset) used = used || (q == p);
                    if (!used) perm.push_back(p);
                }
                KoszulSign ks = koszul_sign(perm, degrees);
                std::vector<int> inner_args;
                for (int p : subset) inner_args.push_back(args[p]);
                Vec inner = S.eval_basis(l, inner_args);
                if (!inner.is_zero()) {
                    std::vector<Vec> outer_args;
                    outer_args.push_back(inner);
                    for (int p = l; p < n; ++p)
                        outer_args.push_back(Vec::basis(args[perm[p]]));
                    Vec term = S.eval(outer, outer_args);
                    term *= Rat(arity_sign * ks.combined());
                    residual += term;
                }
                return;
            }
            for (int p = start; p < n; ++p) {
                subset.push_back(p);
                rec(p + 1);
                subset.pop_back();
            }
        };
        rec(0);
    }
    return residual;
}

// Checks the higher Jacobi identities for every basis multiset of size
// n <= n_max.  Multisets suffice: each identity transforms equivariantly
// under argument reordering, so one representative per orbit is enough.
inline AxiomReport check_jacobi(const LInftyStructure& S, int n_max = 4) {
    if (n_max < 1) throw input_error("n_max must be at least 1");
    AxiomReport report;
    const int dim = static_cast<int>(S.space().dim());
    for (int n = 1; n <= n_max; ++n) {
        report.checked_arities.push_back(n);
        std::vector<int> cur;
        detail::multisets(dim, n, cur, [&](const std::vector<int>& idx) {
            Vec res = jacobi_residual(S, idx);
            if (!res.is_zero()) {
                report.violations.push_back(
                    {"jacobi n=" + std::to_string(n),
                     detail::tuple_names(S.space(), idx),
                     res.to_string(S.space())});
            }
        });
    }
    return report;
}

// Checks the cyclic-pairing axioms:
//  (a) degree support: ae pairs only degrees summing to the dimension,
//  (b) graded symmetry,
//  (c) perfectness on cohomology (Gram matrices of induced pairing),
//  (d) rotation invariance  ae(mu_n(x_1..x_n), x_{n+1}) =
//      (-1)^{n + x_1(x_2+...+x_{n+1})} ae(mu_n(x_2..x_{n+1}), x_1)
//      for all n <= n_max and all basis tuples.
inline AxiomReport check_cyclic(const LInftyStructure& S, const CyclicPairing& ae,
                                int n_max = 4) {
    if (n_max < 1) throw input_error("n_max must be at least 1");
    AxiomReport report;
    const GradedSpace& space = S.space();
    const int dim = static_cast<int>(space.dim());
    const int d = ae.dimension();

    for (const auto& [key, value] : ae.entries()) {
        auto [i, j] = key;
        int di = space.degree_of(i), dj = space.degree_of(j);
        if (di + dj != d)
            report.violations.push_back(
                {"cyclic support", space.name(i) + ", " + space.name(j),
                 "pairs degrees " + std::to_string(di) + " + " +
                     std::to_string(dj) + " != " + std::to_string(d)});
    }

    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            int di = space.degree_of(i), dj = space.degree_of(j);
            int sign = ((di & 1) && (dj & 1)) ? -1 : 1;
            Rat lhs = ae.eval(i, j);
            Rat rhs = Rat(sign) * ae.eval(j, i);
            if (lhs != rhs)
                report.violations.push_back(
                    {"cyclic symmetry", space.name(i) + ", " + space.name(j),
                     format_rational(lhs) + " != " + format_rational(rhs)});
        }

    // perfectness on cohomology
    try {
        CohomologyResult coh = cohomology(S);
        const GradedSpace& H = coh.h_space;
        std::set<int> done;
        bool perfect = true;
        std::string detail_msg;
        for (int deg : H.degrees()) {
            int i = std::min(deg, d - deg);
            if (done.count(i)) continue;
            done.insert(i);
            const auto& hi = H.indices(i);
            const auto& hj = H.indices(d - i);
            if (hi.size() != hj.size()) {
                perfect = false;
                detail_msg = "dim H^" + std::to_string(i) +
                             " != dim H^" + std::to_string(d - i);
                break;
            }
            Matrix gram(hi.size(), hj.size());
            for (std::size_t a = 0; a < hi.size(); ++a)
                for (std::size_t b = 0; b < hj.size(); ++b) {
                    Rat acc = 0;
                    for (std::size_t r = 0; r < space.dim(); ++r)
                        for (std::size_t s = 0; s < space.dim(); ++s) {
                            Rat xa = coh.iota.at(r, hi[a]);
                            Rat xb = coh.iota.at(s, hj[b]);
                            if (xa != 0 && xb != 0)
                                acc += xa * xb *
                                       ae.eval(static_cast<int>(r),
                                               static_cast<int>(s));
                        }
                    gram.at(a, b) = acc;
                }
            if (rank(gram) != hi.size()) {
                perfect = false;
                detail_msg = "induced pairing degenerate between H^" +
                             std::to_string(i) + " and H^" +
                             std::to_string(d - i);
                break;
            }
        }
        if (!perfect)
            report.violations.push_back({"cyclic perfectness", "", detail_msg});
    } catch (const axiom_error& e) {
        report.violations.push_back(
            {"cyclic perfectness", "", std::string("unavailable: ") + e.what()});
    }

    // rotation invariance over all ordered tuples
    for (int n = 1; n <= n_max; ++n) {
        report.checked_arities.push_back(n);
        if (!S.tables().count(n)) continue;
        std::vector<int> t(n + 1, 0);
        bool carry = false;
        while (!carry) {
            std::vector<int> head(t.begin(), t.end() - 1);
            Vec lhs_mu = S.eval_basis(n, head);
            Rat lhs = ae.eval(lhs_mu, Vec::basis(t[n]));
            std::vector<int> rot(t.begin() + 1, t.end());
            Vec rhs_mu = S.eval_basis(n, rot);
            Rat rhs = ae.eval(rhs_mu, Vec::basis(t[0]));
            int tail = 0;
            for (int k = 1; k <= n; ++k) tail += space.degree_of(t[k]);
            int expo = n + space.degree_of(t[0]) * tail;
            if (expo % 2 != 0) rhs = -rhs;
            if (lhs != rhs)
                report.violations.push_back(
                    {"cyclic rotation n=" + std::to_string(n),
                     detail::tuple_names(space, t),
                     format_rational(lhs) + " != " + format_rational(rhs)});
            // next tuple
            int pos = n;
            while (pos >= 0) {
                if (++t[pos] < dim) break;
                t[pos] = 0;
                --pos;
            }
            carry = (pos < 0);
        }
    }
    return report;
}

} // namespace cla
