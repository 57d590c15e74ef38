// Exact rational scalar type and parsing/printing helpers.
//
// The whole toolkit runs on exact rationals by default; doubles only appear
// in the explicitly "float mode" code paths (finite-difference checks, float
// JSON input).  GMP's mpq_class provides canonical arbitrary-precision
// rationals; this header pins the conventions the rest of the code relies on:
// canonical form (gcd 1, positive denominator) and "p/q" string round-trips.

#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace adskit {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int rat_sign(const Rat& r) { return sgn(r); }

// Integral power with negative exponents allowed (throws on 0^-n).
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
    Rat acc(1);
    Rat b = base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    while (n) {
        if (n & 1UL) acc *= b;
        b *= b;
        n >>= 1UL;
    }
    if (e < 0) acc = Rat(1) / acc;
    return acc;
}

// Canonical "p" or "p/q" form, no spaces, denominator positive.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Accepts "p", "p/q", leading '-', and surrounding whitespace.  Returns
// nullopt on malformed input; never throws on bad user data.
inline std::optional<Rat> rat_parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return std::nullopt;
    const auto ok_part = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!ok_part(s)) return std::nullopt;
    } else {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!ok_part(num) || !ok_part(den)) return std::nullopt;
        if (mpz_class(den) == 0) return std::nullopt;
    }
    Rat r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    r.canonicalize();
    return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace adskit
