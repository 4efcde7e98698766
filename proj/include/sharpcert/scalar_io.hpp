#pragma once

#include "sharpcert/quadext.hpp"
#include "sharpcert/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpcert {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline BigInt parse_integer(std::string_view s, bool allow_sign) {
    if (s.empty())
        throw std::invalid_argument("empty integer token");
    std::size_t i = 0;
    bool negative = false;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size())
        throw std::invalid_argument("integer token has no digits");
    BigInt value = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("bad digit in integer token: " + std::string(s));
        value = value * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace detail

/// Parses "num/den" or "n" (optional leading sign on the numerator).
inline Rational parse_rational(std::string_view text) {
    const std::string_view s = detail::trim(text);
    const std::size_t slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(s, true));
    const BigInt num = detail::parse_integer(s.substr(0, slash), true);
    const BigInt den = detail::parse_integer(s.substr(slash + 1), false);
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator: " + std::string(text));
    return Rational(num, den);
}

/// Parses the QuadExt grammar: either a bare Rational or
/// "a + b*sqrt(d)" / "a - b*sqrt(d)" with space-delimited sign.
inline QuadExt parse_quadext(std::string_view text) {
    const std::string_view s = detail::trim(text);
    if (s.find("sqrt") == std::string_view::npos)
        return QuadExt(parse_rational(s));

    std::size_t sep = s.find(" + ");
    int sign = 1;
    if (sep == std::string_view::npos) {
        sep = s.find(" - ");
        sign = -1;
    }
    if (sep == std::string_view::npos)
        throw std::invalid_argument("malformed quadratic value: " + std::string(text));

    const Rational a = parse_rational(s.substr(0, sep));
    std::string_view rest = detail::trim(s.substr(sep + 3));

    const std::size_t star = rest.find("*sqrt(");
    if (star == std::string_view::npos || rest.empty() || rest.back() != ')')
        throw std::invalid_argument("malformed radical term: " + std::string(text));
    Rational b = parse_rational(rest.substr(0, star));
    if (sign < 0)
        b = -b;
    const std::string_view dtok = rest.substr(star + 6, rest.size() - star - 7);
    const BigInt d = detail::parse_integer(dtok, false);
    if (d < 1 || d > BigInt(INT64_MAX))
        throw std::invalid_argument("radicand out of range: " + std::string(text));
    return QuadExt(a, b, d.convert_to<std::int64_t>());
}

}  // namespace sharpcert
