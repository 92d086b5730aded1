#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace vahlen {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline int sign_of(const Rat& r) { return r.sign(); }

// Canonical "n/d" form, d > 0, always with the slash.
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

// Floor of sqrt for nonnegative integers.
inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    if (root) *root = r;
    return r * r == n;
}

// n = s^2 * f with f squarefree (trial division; inputs here are small).
inline void squarefree_decompose(long n, long& s, long& f) {
    if (n <= 0) throw std::domain_error("squarefree_decompose needs n > 0");
    s = 1;
    f = 1;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        long e = 0;
        while (m % p == 0) { m /= p; ++e; }
        for (long i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) f *= p;
    }
    f *= m;
}

} // namespace vahlen
