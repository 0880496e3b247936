#pragma once

#include <map>
#include <span>
#include <vector>

#include "cla/graded_space.hpp"

namespace cla {

// Sign data for reordering graded elements in a wedge product.  With
// sigma the permutation and a_i of the given degrees, the defining identity
// is  a_{sigma(1)} ^ ... ^ a_{sigma(n)} = parity * eps * a_1 ^ ... ^ a_n,
// where parity is the ordinary sign of sigma and eps the Koszul sign picked
// up from commuting graded elements.  The split between the two factors is
// fixed by this routine once and documented in docs/formats.md; axiom checks
// only ever consume the product.
struct KoszulSign {
    int eps = 1;
    int parity = 1;
    int combined() const { return eps * parity; }
};

// perm holds sigma(1..n) as 0-based original positions.
inline KoszulSign koszul_sign(std::vector<int> perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size())
        throw input_error("permutation and degree list lengths differ");
    KoszulSign s;
    // bubble sort, accumulating one swap at a time
    for (std::size_t pass = 0; pass + 1 < perm.size(); ++pass) {
        for (std::size_t k = 0; k + 1 < perm.size(); ++k) {
            if (perm[k] > perm[k + 1]) {
                int du = degrees[perm[k]];
                int dv = degrees[perm[k + 1]];
                if ((du & 1) && (dv & 1)) s.eps = -s.eps;
                s.parity = -s.parity;
                std::swap(perm[k], perm[k + 1]);
            }
        }
    }
    return s;
}

// Multilinear structure maps mu_k on a graded space; mu_k raises degree by
// 2 - k.  Values are stored only on sorted basis multi-indices; all other
// argument orders are induced by the wedge reordering sign.  A repeated
// basis element of even degree forces the value zero and may not be stored.
class LInftyStructure {
public:
    using Table = std::map<std::vector<int>, Vec>;

    LInftyStructure() = default;
    explicit LInftyStructure(GradedSpace space) : space_(std::move(space)) {}

    const GradedSpace& space() const { return space_; }
    int max_arity() const { return max_arity_; }

    const std::map<int, Table>& tables() const { return mu_; }

    void set_entry(int arity, std::vector<int> inputs, const Vec& value) {
        if (arity < 1)
            throw input_error("arity must be at least 1");
        if (static_cast<int>(inputs.size()) != arity)
            throw input_error("input tuple length does not match arity");
        for (std::size_t i = 0; i + 1 < inputs.size(); ++i) {
            if (inputs[i] > inputs[i + 1])
                throw input_error("structure-constant inputs must be sorted");
            if (inputs[i] == inputs[i + 1] &&
                space_.degree_of(inputs[i]) % 2 == 0)
                throw input_error(
                    "repeated even-degree input '" + space_.name(inputs[i]) +
                    "' forces a zero value; omit the entry");
        }
        if (value.is_zero()) return;
        int in_deg = 0;
        for (int i : inputs) in_deg += space_.degree_of(i);
        int expected = in_deg + 2 - arity;
        for (const auto& [i, c] : value.c) {
            if (space_.degree_of(i) != expected)
                throw input_error("output '" + space_.name(i) +
                                  "' violates the degree shift (expected degree " +
                                  std::to_string(expected) + ")");
        }
        mu_[arity][std::move(inputs)] = value;
        max_arity_ = std::max(max_arity_, arity);
    }

    // Wedge reordering: sorts basis indices ascending and returns the
    // combined sign, or 0 when a repeated even-degree element occurs.
    int sort_wedge(std::vector<int>& idx) const {
        int sign = 1;
        for (std::size_t pass = 0; pass + 1 < idx.size(); ++pass)
            for (std::size_t k = 0; k + 1 < idx.size(); ++k)
                if (idx[k] > idx[k + 1]) {
                    int du = space_.degree_of(idx[k]);
                    int dv = space_.degree_of(idx[k + 1]);
                    sign *= ((du & 1) && (dv & 1)) ? 1 : -1;
                    std::swap(idx[k], idx[k + 1]);
                }
        for (std::size_t k = 0; k + 1 < idx.size(); ++k)
            if (idx[k] == idx[k + 1] && space_.degree_of(idx[k]) % 2 == 0)
                return 0;
        return sign;
    }

    // mu_k on basis elements, arguments in any order.
    Vec eval_basis(int arity, std::vector<int> idx) const {
        if (static_cast<int>(idx.size()) != arity)
            throw internal_error("eval_basis arity mismatch");
        for (int i : idx)
            if (i < 0 || i >= static_cast<int>(space_.dim()))
                throw input_error("argument index outside this graded space");
        int sign = sort_wedge(idx);
        if (sign == 0) return {};
        auto tit = mu_.find(arity);
        if (tit == mu_.end()) return {};
        auto it = tit->second.find(idx);
        if (it == tit->second.end()) return {};
        Vec v = it->second;
        v *= Rat(sign);
        return v;
    }

    // Multilinear extension.
    Vec eval(int arity, std::span<const Vec> args) const {
        if (static_cast<int>(args.size()) != arity)
            throw internal_error("eval arity mismatch");
        Vec acc;
        std::vector<int> idx(arity);
        expand(args, 0, Rat(1), idx, acc);
        return acc;
    }

private:
    void expand(std::span<const Vec> args, std::size_t k, const Rat& coeff,
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

    GradedSpace space_;
    std::map<int, Table> mu_;
    int max_arity_ = 0;
};

// Graded symmetric pairing of fixed dimension d (d = 3 throughout): entries
// pair degrees i and d - i.  Stored on ordered pairs so that deliberately
// broken tables can be represented and then flagged by the axiom checks;
// set_symmetric writes both orientations consistently.
class CyclicPairing {
public:
    CyclicPairing() = default;
    explicit CyclicPairing(int dimension) : d_(dimension) {}

    int dimension() const { return d_; }

    void set_symmetric(const GradedSpace& space, int i, int j, const Rat& v) {
        if (v == 0) return;
        int di = space.degree_of(i), dj = space.degree_of(j);
        if (di + dj != d_)
            throw input_error("pairing of '" + space.name(i) + "' and '" +
                              space.name(j) + "' violates the degree support");
        int sign = ((di & 1) && (dj & 1)) ? -1 : 1;
        entries_[{i, j}] = v;
        if (i != j) entries_[{j, i}] = Rat(sign) * v;
    }

    void set_raw(int i, int j, const Rat& v) {
        if (v == 0)
            entries_.erase({i, j});
        else
            entries_[{i, j}] = v;
    }

    Rat eval(int i, int j) const {
        auto it = entries_.find({i, j});
        return it == entries_.end() ? Rat(0) : it->second;
    }

    Rat eval(const Vec& x, const Vec& y) const {
        Rat acc = 0;
        for (const auto& [i, ci] : x.c)
            for (const auto& [j, cj] : y.c) {
                Rat e = eval(i, j);
                if (e != 0) acc += ci * cj * e;
            }
        return acc;
    }

    const std::map<std::pair<int, int>, Rat>& entries() const { return entries_; }

private:
    int d_ = 3;
    std::map<std::pair<int, int>, Rat> entries_;
};

} // namespace cla
