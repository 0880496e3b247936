#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "cla/errors.hpp"

namespace cla {

// Exact arithmetic over the rationals.  Values are always stored reduced,
// with a positive denominator; zero is 0/1.  cpp_rational maintains these
// invariants internally, we only add strict parsing and canonical printing.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

// Accepts only `p`, `-p`, `p/q`, `-p/q` with decimal digits and q > 0.
// Anything else (floats, exponents, whitespace) is rejected.
inline Rat parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s.remove_prefix(1);
    }
    auto take_digits = [&](std::string_view& v) -> std::string {
        std::string out;
        while (!v.empty() && std::isdigit(static_cast<unsigned char>(v[0]))) {
            out.push_back(v[0]);
            v.remove_prefix(1);
        }
        return out;
    };
    std::string num = take_digits(s);
    if (num.empty())
        throw input_error("malformed rational '" + std::string(text) + "'");
    std::string den = "1";
    if (!s.empty()) {
        if (s[0] != '/')
            throw input_error("malformed rational '" + std::string(text) + "'");
        s.remove_prefix(1);
        den = take_digits(s);
        if (den.empty() || !s.empty())
            throw input_error("malformed rational '" + std::string(text) + "'");
    }
    Int n(num), d(den);
    if (d == 0)
        throw input_error("zero denominator in '" + std::string(text) + "'");
    if (negative)
        n = -n;
    return Rat(n, d);
}

// Canonical form: `p` when the denominator is 1, else `p/q`.
inline std::string format_rational(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (!rat_is_integer(r))
        os << '/' << rat_den(r);
    return os.str();
}

} // namespace cla
