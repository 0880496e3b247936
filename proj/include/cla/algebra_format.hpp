#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cla/linfty.hpp"
#include "cla/polynomial.hpp"

namespace cla {

// Plain-text algebra files.  Sections: a `dimension` line, then brace-
// delimited `degrees`, `mu` and `kappa` blocks:
//
//   dimension 3
//   degrees {
//     1: a e
//     2: b c
//   }
//   mu {
//     1 [e] = c
//     2 [a a] = 2*b
//   }
//   kappa {
//     [a b] = 1
//   }
//
// `#` starts a comment.  Structure-constant inputs must be listed in basis
// order (the declaration order of the degrees block); outputs are linear
// combinations in the polynomial syntax.  Unknown sections are rejected.

struct AlgebraData {
    LInftyStructure structure;
    CyclicPairing pairing;
};

namespace detail {

struct LineReader {
    std::istringstream in;
    std::string file;
    int lineno = 0;

    explicit LineReader(const std::string& text, std::string filename)
        : in(text), file(std::move(filename)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error(file + ":" + std::to_string(lineno) + ": " + msg);
    }

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++lineno;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::size_t a = raw.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            std::size_t b = raw.find_last_not_of(" \t\r");
            out = raw.substr(a, b - a + 1);
            return true;
        }
        return false;
    }
};

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// parses "[n1 n2 ...] rest" returning the names and the remainder
inline std::vector<std::string> parse_bracket_list(LineReader& rd,
                                                   std::string& s) {
    if (s.empty() || s[0] != '[') rd.fail("expected '[' starting an input list");
    auto close = s.find(']');
    if (close == std::string::npos) rd.fail("missing ']'");
    std::vector<std::string> names = split_ws(s.substr(1, close - 1));
    s = s.substr(close + 1);
    std::size_t a = s.find_first_not_of(" \t");
    s = a == std::string::npos ? "" : s.substr(a);
    return names;
}

} // namespace detail

inline AlgebraData parse_algebra_text(const std::string& text,
                                      const std::string& filename = "<input>") {
    detail::LineReader rd(text, filename);
    std::string line;

    GradedSpace space;
    int dimension = -1;
    bool seen_degrees = false;

    struct PendingMu {
        int arity;
        std::vector<std::string> names;
        std::string value;
        int lineno;
    };
    struct PendingKappa {
        std::string a, b;
        Rat value;
        int lineno;
    };
    std::vector<PendingMu> mu_entries;
    std::vector<PendingKappa> kappa_entries;

    while (rd.next(line)) {
        auto words = detail::split_ws(line);
        if (words.empty()) continue;
        if (words[0] == "dimension") {
            if (words.size() != 2) rd.fail("usage: dimension <d>");
            try {
                dimension = std::stoi(words[1]);
            } catch (...) {
                rd.fail("malformed dimension '" + words[1] + "'");
            }
            if (dimension != 3)
                rd.fail("this toolkit handles dimension 3 only");
            continue;
        }
        if (words[0] == "degrees" || words[0] == "mu" || words[0] == "kappa") {
            if (words.size() != 2 || words[1] != "{")
                rd.fail("expected '" + words[0] + " {'");
            std::string section = words[0];
            if (section == "degrees") seen_degrees = true;
            while (true) {
                if (!rd.next(line)) rd.fail("unterminated '" + section + "' block");
                if (line == "}") break;
                if (section == "degrees") {
                    auto colon = line.find(':');
                    if (colon == std::string::npos)
                        rd.fail("expected '<degree>: name ...'");
                    int deg = 0;
                    try {
                        deg = std::stoi(line.substr(0, colon));
                    } catch (...) {
                        rd.fail("malformed degree '" + line.substr(0, colon) + "'");
                    }
                    for (const auto& name : detail::split_ws(line.substr(colon + 1))) {
                        try {
                            space.add_element(name, deg);
                        } catch (const input_error& e) {
                            rd.fail(e.what());
                        }
                    }
                } else if (section == "mu") {
                    auto sp = line.find_first_of(" \t");
                    if (sp == std::string::npos) rd.fail("expected '<arity> [inputs] = value'");
                    int arity = 0;
                    try {
                        arity = std::stoi(line.substr(0, sp));
                    } catch (...) {
                        rd.fail("malformed arity '" + line.substr(0, sp) + "'");
                    }
                    std::string rest = line.substr(sp + 1);
                    std::size_t a = rest.find_first_not_of(" \t");
                    if (a == std::string::npos) rd.fail("missing input list");
                    rest = rest.substr(a);
                    auto names = detail::parse_bracket_list(rd, rest);
                    if (rest.empty() || rest[0] != '=')
                        rd.fail("expected '=' after the input list");
                    mu_entries.push_back(
                        {arity, names, rest.substr(1), rd.lineno});
                } else {
                    std::string rest = line;
                    auto names = detail::parse_bracket_list(rd, rest);
                    if (names.size() != 2) rd.fail("kappa entries pair two names");
                    if (rest.empty() || rest[0] != '=')
                        rd.fail("expected '=' after the pair");
                    std::string value = rest.substr(1);
                    std::size_t b = value.find_first_not_of(" \t");
                    if (b == std::string::npos) rd.fail("missing value");
                    Rat v;
                    try {
                        v = parse_rational(value.substr(b));
                    } catch (const input_error& e) {
                        rd.fail(e.what());
                    }
                    kappa_entries.push_back({names[0], names[1], v, rd.lineno});
                }
            }
            continue;
        }
        rd.fail("unknown key '" + words[0] + "'");
    }

    if (dimension < 0)
        throw input_error(filename + ": missing 'dimension' line");
    if (!seen_degrees)
        throw input_error(filename + ": missing 'degrees' block");

    AlgebraData out{LInftyStructure(space), CyclicPairing(dimension)};

    VarList names = make_vars([&] {
        std::vector<std::string> v;
        for (const auto& b : space.basis()) v.push_back(b.name);
        return v;
    }());

    auto fail_at = [&](int lineno, const std::string& msg) -> void {
        throw input_error(filename + ":" + std::to_string(lineno) + ": " + msg);
    };

    for (const auto& entry : mu_entries) {
        std::vector<int> idx;
        for (const auto& n : entry.names) {
            if (!space.has(n)) fail_at(entry.lineno, "unknown basis name '" + n + "'");
            idx.push_back(space.index_of(n));
        }
        Vec value;
        try {
            Poly p = Poly::parse(entry.value, names);
            for (const auto& [e, c] : p.terms()) {
                if (exp_total(e) != 1)
                    fail_at(entry.lineno,
                            "output must be a linear combination of basis names");
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] == 1) value.add(static_cast<int>(i), c);
            }
        } catch (const input_error& e) {
            fail_at(entry.lineno, e.what());
        }
        try {
            out.structure.set_entry(entry.arity, idx, value);
        } catch (const input_error& e) {
            fail_at(entry.lineno, e.what());
        }
    }

    for (const auto& entry : kappa_entries) {
        if (!space.has(entry.a))
            fail_at(entry.lineno, "unknown basis name '" + entry.a + "'");
        if (!space.has(entry.b))
            fail_at(entry.lineno, "unknown basis name '" + entry.b + "'");
        int i = space.index_of(entry.a), j = space.index_of(entry.b);
        if (out.pairing.eval(i, j) != 0)
            fail_at(entry.lineno, "duplicate kappa entry");
        try {
            out.pairing.set_symmetric(space, i, j, entry.value);
        } catch (const input_error& e) {
            fail_at(entry.lineno, e.what());
        }
    }
    return out;
}

inline AlgebraData parse_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_text(buf.str(), path);
}

inline std::string serialize_algebra(const LInftyStructure& S,
                                     const CyclicPairing& ae) {
    const GradedSpace& space = S.space();
    std::ostringstream os;
    os << "dimension " << ae.dimension() << "\n\n";
    os << "degrees {\n";
    for (int deg : space.degrees()) {
        os << "  " << deg << ":";
        for (int i : space.indices(deg)) os << " " << space.name(i);
        os << "\n";
    }
    os << "}\n\nmu {\n";
    for (const auto& [arity, table] : S.tables()) {
        for (const auto& [inputs, value] : table) {
            os << "  " << arity << " [";
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                if (i) os << " ";
                os << space.name(inputs[i]);
            }
            os << "] = " << value.to_string(space) << "\n";
        }
    }
    os << "}\n\nkappa {\n";
    for (const auto& [key, v] : ae.entries()) {
        if (key.first > key.second) continue;
        os << "  [" << space.name(key.first) << " " << space.name(key.second)
           << "] = " << format_rational(v) << "\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace cla
