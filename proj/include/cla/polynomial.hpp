#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cla/rational.hpp"

namespace cla {

using Exponents = std::vector<int>;

inline int exp_total(const Exponents& e) {
    int t = 0;
    for (int k : e) t += k;
    return t;
}

// Graded lexicographic order: compare by total degree, ties broken by the
// exponent vectors lexicographically.  This fixes the storage order of terms
// and hence the byte-for-byte output of every serializer.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = exp_total(a), db = exp_total(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

// Sparse multivariate polynomial over Rat with a dense exponent vector per
// term.  No zero coefficients are ever stored; all exponent vectors have
// length equal to the variable count.
class Poly {
public:
    using TermMap = std::map<Exponents, Rat, GrlexLess>;

    Poly() : vars_(make_vars({})) {}
    explicit Poly(VarList vars) : vars_(std::move(vars)) {}

    static Poly zero(VarList vars) { return Poly(std::move(vars)); }

    static Poly constant(VarList vars, const Rat& c) {
        Poly p(std::move(vars));
        if (c != 0)
            p.terms_[Exponents(p.num_vars(), 0)] = c;
        return p;
    }

    static Poly variable(VarList vars, std::size_t index, int power = 1) {
        Poly p(vars);
        if (index >= p.num_vars())
            throw internal_error("variable index out of range");
        Exponents e(p.num_vars(), 0);
        e[index] = power;
        p.terms_[e] = 1;
        return p;
    }

    static Poly monomial(VarList vars, Exponents e, const Rat& c) {
        Poly p(std::move(vars));
        if (e.size() != p.num_vars())
            throw internal_error("exponent length mismatch");
        if (c != 0)
            p.terms_[std::move(e)] = c;
        return p;
    }

    const VarList& vars() const { return vars_; }
    const std::vector<std::string>& var_names() const { return *vars_; }
    std::size_t num_vars() const { return vars_->size(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && exp_total(terms_.begin()->first) == 0);
    }

    Rat constant_term() const {
        Exponents e(num_vars(), 0);
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    Rat coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    // Total degree; -1 for the zero polynomial.
    int total_degree() const {
        return terms_.empty() ? -1 : exp_total(terms_.rbegin()->first);
    }

    // Minimal total degree of a term; empty for the zero polynomial.
    std::optional<int> order() const {
        if (terms_.empty()) return std::nullopt;
        return exp_total(terms_.begin()->first);
    }

    // Largest k with v^k dividing the polynomial; empty for zero.
    std::optional<int> order_in(std::size_t var) const {
        if (terms_.empty()) return std::nullopt;
        int best = -1;
        for (const auto& [e, c] : terms_) {
            if (best < 0 || e[var] < best)
                best = e[var];
            if (best == 0) break;
        }
        return best;
    }

    int degree_in(std::size_t var) const {
        int best = 0;
        for (const auto& [e, c] : terms_)
            best = std::max(best, e[var]);
        return best;
    }

    Poly& operator+=(const Poly& o) {
        require_same_vars(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        require_same_vars(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }

    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_)
            r.terms_[e] = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_vars(b);
        Poly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly& operator*=(const Rat& s) {
        if (s == 0) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Poly operator*(Poly p, const Rat& s) { p *= s; return p; }
    friend Poly operator*(const Rat& s, Poly p) { p *= s; return p; }

    bool operator==(const Poly& o) const {
        return *vars_ == *o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(int k) const {
        if (k < 0) throw internal_error("negative power");
        Poly r = constant(vars_, 1);
        Poly base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    Poly derivative(std::size_t var) const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d(e);
            d[var] -= 1;
            r.add_term(d, c * e[var]);
        }
        return r;
    }

    // Composite polynomial: every variable is replaced by its image.  All
    // images must share one variable list, which becomes the result's.
    Poly substitute(const std::vector<Poly>& images) const {
        if (images.size() != num_vars())
            throw input_error("substitution must map every variable");
        VarList target = images.empty() ? vars_ : images[0].vars_;
        for (const auto& im : images)
            if (*im.vars_ != *target)
                throw input_error("substitution images use mismatched variable lists");
        Poly r = Poly::zero(target);
        for (const auto& [e, c] : terms_) {
            Poly t = Poly::constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0)
                    t = t * images[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& point) const {
        if (point.size() != num_vars())
            throw internal_error("evaluation point dimension mismatch");
        Rat acc = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k)
                    t *= point[i];
            acc += t;
        }
        return acc;
    }

    Poly truncate_above(int max_total_degree) const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_)
            if (exp_total(e) <= max_total_degree)
                r.terms_[e] = c;
        return r;
    }

    Poly homogeneous_part(int degree) const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_)
            if (exp_total(e) == degree)
                r.terms_[e] = c;
        return r;
    }

    // Exact division under the graded-lex order; empty when the divisor does
    // not divide exactly.
    std::optional<Poly> divide_exact(const Poly& g) const {
        require_same_vars(g);
        if (g.is_zero()) return std::nullopt;
        Poly rem = *this;
        Poly quot(vars_);
        const auto& glead = *g.terms_.rbegin();
        while (!rem.is_zero()) {
            const auto& rlead = *rem.terms_.rbegin();
            Exponents q(rlead.first);
            bool divides = true;
            for (std::size_t i = 0; i < q.size(); ++i) {
                q[i] -= glead.first[i];
                if (q[i] < 0) { divides = false; break; }
            }
            if (!divides) return std::nullopt;
            Rat qc = rlead.second / glead.second;
            quot.add_term(q, qc);
            Poly piece = Poly::monomial(vars_, q, qc);
            rem -= piece * g;
        }
        return quot;
    }

    // Largest k with g^k dividing the polynomial (g nonconstant).
    int order_along(const Poly& g) const {
        if (is_zero()) throw internal_error("order_along on zero polynomial");
        int k = 0;
        Poly cur = *this;
        while (true) {
            auto q = cur.divide_exact(g);
            if (!q) return k;
            cur = *q;
            ++k;
        }
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rat& c = it->second;
            bool neg = c < 0;
            Rat ac = neg ? Rat(-c) : c;
            if (first) {
                if (neg) os << '-';
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            bool has_vars = exp_total(it->first) > 0;
            bool wrote_coeff = false;
            if (!has_vars || ac != 1) {
                os << format_rational(ac);
                wrote_coeff = true;
            }
            bool first_factor = !wrote_coeff;
            for (std::size_t i = 0; i < it->first.size(); ++i) {
                int e = it->first[i];
                if (e == 0) continue;
                if (!first_factor) os << '*';
                first_factor = false;
                os << (*vars_)[i];
                if (e > 1) os << '^' << e;
            }
        }
        return os.str();
    }

    // Parses the plain-text grammar: terms like `3/2*x^2*y - y^3`, `^` for
    // powers, rational coefficients `p/q`, explicit `*` between factors.
    // With no fixed variable list, variables are collected and ordered
    // alphabetically.
    static Poly parse(const std::string& text, VarList fixed_vars = nullptr);

private:
    void require_same_vars(const Poly& o) const {
        if (vars_ != o.vars_ && *vars_ != *o.vars_)
            throw input_error("variable-list mismatch between polynomials");
    }

    VarList vars_;
    TermMap terms_;
};

namespace detail {

struct PolyToken {
    enum Kind { Number, Name, Op, End } kind;
    std::string text;  // for Number / Name
    char op = 0;       // for Op
    std::size_t pos = 0;
};

inline std::vector<PolyToken> poly_tokenize(const std::string& s) {
    std::vector<PolyToken> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({PolyToken::Number, s.substr(i, j - i), 0, i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({PolyToken::Name, s.substr(i, j - i), 0, i});
            i = j;
            continue;
        }
        if (ch == '+' || ch == '-' || ch == '*' || ch == '^' || ch == '/') {
            out.push_back({PolyToken::Op, std::string(1, ch), ch, i});
            ++i;
            continue;
        }
        throw input_error("unexpected character '" + std::string(1, ch) +
                          "' at position " + std::to_string(i));
    }
    out.push_back({PolyToken::End, "", 0, s.size()});
    return out;
}

} // namespace detail

inline Poly Poly::parse(const std::string& text, VarList fixed_vars) {
    auto tokens = detail::poly_tokenize(text);
    VarList vars = fixed_vars;
    if (!vars) {
        std::set<std::string> names;
        for (const auto& t : tokens)
            if (t.kind == detail::PolyToken::Name)
                names.insert(t.text);
        vars = make_vars(std::vector<std::string>(names.begin(), names.end()));
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vars->size(); ++i)
        index[(*vars)[i]] = i;

    std::size_t pos = 0;
    auto peek = [&]() -> const detail::PolyToken& { return tokens[pos]; };
    auto next = [&]() -> const detail::PolyToken& { return tokens[pos++]; };
    auto fail = [&](const std::string& what) -> void {
        throw input_error(what + " at position " + std::to_string(peek().pos));
    };

    // factor := NAME ('^' NUMBER)? | NUMBER ('/' NUMBER)?
    auto parse_factor = [&](Exponents& e, Rat& c) {
        const auto& t = next();
        if (t.kind == detail::PolyToken::Name) {
            auto it = index.find(t.text);
            if (it == index.end())
                throw input_error("unknown variable '" + t.text + "'");
            int power = 1;
            if (peek().kind == detail::PolyToken::Op && peek().op == '^') {
                ++pos;
                if (peek().kind != detail::PolyToken::Number)
                    fail("expected exponent");
                const std::string& num = next().text;
                if (num.size() > 6)
                    throw resource_error("exponent too large: " + num);
                power = std::stoi(num);
            }
            e[it->second] += power;
        } else if (t.kind == detail::PolyToken::Number) {
            std::string lit = t.text;
            if (peek().kind == detail::PolyToken::Op && peek().op == '/') {
                ++pos;
                if (peek().kind != detail::PolyToken::Number)
                    fail("expected denominator");
                lit += "/" + next().text;
            }
            c *= parse_rational(lit);
        } else {
            fail("expected a coefficient or a variable");
        }
    };

    Poly result(vars);
    bool expect_term = true;
    Rat sign = 1;
    while (peek().kind != detail::PolyToken::End) {
        if (!expect_term) {
            const auto& t = next();
            if (t.kind != detail::PolyToken::Op || (t.op != '+' && t.op != '-'))
                throw input_error("expected '+' or '-' at position " +
                                  std::to_string(t.pos));
            sign = (t.op == '-') ? -1 : 1;
            expect_term = true;
            continue;
        }
        // optional unary sign on the first term
        if (peek().kind == detail::PolyToken::Op &&
            (peek().op == '+' || peek().op == '-')) {
            sign = (next().op == '-') ? Rat(-1) : Rat(1);
        }
        Exponents e(vars->size(), 0);
        Rat c = sign;
        parse_factor(e, c);
        while (peek().kind == detail::PolyToken::Op && peek().op == '*') {
            ++pos;
            parse_factor(e, c);
        }
        result.add_term(e, c);
        sign = 1;
        expect_term = false;
    }
    if (expect_term)
        throw input_error("empty polynomial expression");
    return result;
}

} // namespace cla
