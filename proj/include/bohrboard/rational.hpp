#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bohrboard {

// All arithmetic in this library is exact. Rationals are kept canonical
// (lowest terms, positive denominator) by the backing type.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_floor(const Rational& x) {
    Int n = numerator(x);
    Int d = denominator(x);
    Int q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) {
        --q;
    }
    return q;
}

inline Int rational_ceil(const Rational& x) { return -rational_floor(-x); }

// Fractional part, in [0, 1).
inline Rational frac_part(const Rational& x) { return x - Rational(rational_floor(x)); }

// Representative of x mod m in [0, m). Requires m > 0.
inline Rational mod_positive(const Rational& x, const Rational& m) {
    return x - Rational(rational_floor(x / m)) * m;
}

// Canonical "p/q" form used in every file and on the CLI ("0" prints as "0/1").
inline std::string to_pq_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on
// malformed input or a zero denominator.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    };
    // trim
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string_view::npos) return fail();
    std::string_view s = text.substr(b, e - b + 1);

    auto parse_int = [&](std::string_view part) -> Int {
        if (part.empty()) fail();
        size_t i = 0;
        if (part[0] == '-' || part[0] == '+') i = 1;
        if (i == part.size()) fail();
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') fail();
        }
        return Int(std::string(part));
    };

    size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(s));
    }
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in rational '" + std::string(text) + "'");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

// Comma-separated list of rationals, e.g. "577/408,1351/780".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        std::string_view part =
            comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        out.push_back(parse_rational(part));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline std::string to_pq_list_string(const std::vector<Rational>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += to_pq_string(xs[i]);
    }
    return out;
}

// FNV-1a over raw bytes; the 64-bit digest used for board and config hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace bohrboard
