#pragma once

// Shared exact-arithmetic primitives: arbitrary-precision integers and
// rationals, integer square roots, squarefree extraction, and the error
// types used across the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace toralg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Malformed input text. `position` is the byte offset of the offending token.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

/// Well-formed input denoting a value outside the domain (rational, nonpositive, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Irrational but of degree > 2 (e.g. a sum of incompatible radicals). Kept
/// distinct so the CLI can answer "torus only" instead of failing: for these
/// values the automorphism group has no matrix part.
struct NotQuadraticError : DomainError {
    explicit NotQuadraticError(const std::string& msg) : DomainError(msg) {}
};

inline int sign_of(const Int& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return abs(x); }

/// Floor division (rounds toward negative infinity). b must be nonzero.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) {
    return floor_div(numerator(r), denominator(r));
}

/// Reduce a rational angle into [0, 1).
inline Rat mod1(const Rat& t) { return t - Rat(floor_rat(t)); }

/// num/den as an exact rational; unlike the raw two-argument constructor this
/// accepts negative denominators (boost::rational rejects them for unbounded
/// integer types).
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw DomainError("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rat(std::move(num), std::move(den));
}

/// Floor of sqrt(n) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw DomainError("isqrt of negative value");
    return sqrt(n);  // multiprecision sqrt is the integer floor root
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

/// Exact sign of a + b*sqrt(d) for integers a, b and d >= 0.
/// Returns 0 only when the value is exactly zero (possible only if d is a
/// perfect square or b == 0).
inline int sign_a_plus_b_sqrt(const Int& a, const Int& b, const Int& d) {
    if (d < 0) throw DomainError("negative radicand");
    if (b == 0 || d == 0) return sign_of(a);
    if (a == 0) return sign_of(b);
    int sa = sign_of(a), sb = sign_of(b);
    if (sa == sb) return sa;
    // opposite signs: compare a^2 against b^2 d
    Int lhs = a * a, rhs = b * b * d;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}

/// Write n > 0 as d * f^2 with d squarefree, by trial division up to 10^6
/// followed by a perfect-square test on the remaining cofactor. Square prime
/// factors beyond the trial bound are not detected (documented bound).
inline std::pair<Int, Int> extract_square(Int n) {
    if (n <= 0) throw DomainError("extract_square expects a positive integer");
    Int d = 1, f = 1;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e % 2 == 1) d *= p;
        for (int i = 0; i < e / 2; ++i) f *= p;
    };
    strip(2);
    strip(3);
    for (Int p = 5; p <= 1000000 && p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) {
        if (is_square(n)) f *= isqrt(n);
        else d *= n;
    }
    return {d, f};
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
template <typename T>
std::tuple<T, T, T> extended_gcd(T a, T b) {
    T old_r = a, r = b;
    T old_s = 1, s = 0;
    T old_t = 0, t = 1;
    while (r != 0) {
        T q = old_r / r;
        old_r -= q * r; std::swap(old_r, r);
        old_s -= q * s; std::swap(old_s, s);
        old_t -= q * t; std::swap(old_t, t);
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

}  // namespace toralg
