#pragma once

#include <map>
#include <string>
#include <vector>

#include "cla/errors.hpp"
#include "cla/rational.hpp"

namespace cla {

// Finite-dimensional Z-graded vector space with a named, globally indexed
// basis.  The global index order is the declaration order and fixes how
// structure-constant tables are keyed.
class GradedSpace {
public:
    struct BasisElement {
        std::string name;
        int degree;
    };

    void add_element(const std::string& name, int degree) {
        if (index_.count(name))
            throw input_error("duplicate basis name '" + name + "'");
        index_[name] = basis_.size();
        by_degree_[degree].push_back(static_cast<int>(basis_.size()));
        basis_.push_back({name, degree});
    }

    std::size_t dim() const { return basis_.size(); }

    std::size_t dim(int degree) const {
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? 0 : it->second.size();
    }

    const std::vector<int>& indices(int degree) const {
        static const std::vector<int> empty;
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? empty : it->second;
    }

    int degree_of(int i) const { return basis_.at(i).degree; }
    const std::string& name(int i) const { return basis_.at(i).name; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw input_error("unknown basis name '" + name + "'");
        return static_cast<int>(it->second);
    }
    bool has(const std::string& name) const { return index_.count(name) > 0; }

    std::vector<int> degrees() const {
        std::vector<int> out;
        for (const auto& [d, v] : by_degree_)
            if (!v.empty()) out.push_back(d);
        return out;
    }

    const std::vector<BasisElement>& basis() const { return basis_; }

    bool operator==(const GradedSpace& o) const {
        if (basis_.size() != o.basis_.size()) return false;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].name != o.basis_[i].name ||
                basis_[i].degree != o.basis_[i].degree)
                return false;
        return true;
    }

private:
    std::vector<BasisElement> basis_;
    std::map<int, std::vector<int>> by_degree_;
    std::map<std::string, std::size_t> index_;
};

// Sparse element of a graded space.
struct Vec {
    std::map<int, Rat> c;

    bool is_zero() const { return c.empty(); }

    void add(int i, const Rat& v) {
        if (v == 0) return;
        auto it = c.find(i);
        if (it == c.end()) {
            c.emplace(i, v);
        } else {
            it->second += v;
            if (it->second == 0) c.erase(it);
        }
    }

    Vec& operator+=(const Vec& o) {
        for (const auto& [i, v] : o.c) add(i, v);
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (const auto& [i, v] : o.c) add(i, -v);
        return *this;
    }
    Vec& operator*=(const Rat& s) {
        if (s == 0) { c.clear(); return *this; }
        for (auto& [i, v] : c) v *= s;
        return *this;
    }
    friend Vec operator*(const Rat& s, Vec v) { v *= s; return v; }
    friend Vec operator+(Vec a, const Vec& b) { a += b; return a; }
    friend Vec operator-(Vec a, const Vec& b) { a -= b; return a; }
    bool operator==(const Vec& o) const { return c == o.c; }

    static Vec basis(int i) {
        Vec v;
        v.c[i] = 1;
        return v;
    }

    Rat coeff(int i) const {
        auto it = c.find(i);
        return it == c.end() ? Rat(0) : it->second;
    }

    std::string to_string(const GradedSpace& space) const {
        if (c.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [i, v] : c) {
            bool neg = v < 0;
            Rat av = neg ? Rat(-v) : v;
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            if (av != 1) {
                out += format_rational(av);
                out += "*";
            }
            out += space.name(i);
        }
        return out;
    }
};

} // namespace cla
