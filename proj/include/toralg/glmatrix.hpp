#pragma once

// 2x2 integer matrices with determinant +-1, the carriers of monomial torus
// maps and automorphism-group generators.

#include "toralg/arith.hpp"

#include <string>

namespace toralg {

/// Row-major [[a, b], [c, d]] with arbitrary-precision entries.
struct GLMatrix {
    Int a{1}, b{0}, c{0}, d{1};

    static GLMatrix identity() { return {}; }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    bool unimodular() const { Int D = det(); return D == 1 || D == -1; }

    GLMatrix operator*(const GLMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    GLMatrix operator-() const { return {-a, -b, -c, -d}; }

    /// Exact inverse; requires det = +-1.
    GLMatrix inverse() const {
        Int D = det();
        if (D != 1 && D != -1) throw DomainError("matrix is not in GL(2,Z)");
        // 1/D == D for D = +-1
        return {d * D, -b * D, -c * D, a * D};
    }

    /// Integer power, negative exponents via the inverse.
    GLMatrix pow(Int k) const {
        GLMatrix base = *this;
        if (k < 0) { base = inverse(); k = -k; }
        GLMatrix acc = identity();
        while (k > 0) {
            if ((k & 1) != 0) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    bool operator==(const GLMatrix&) const = default;
};

inline std::string to_string(const GLMatrix& m) {
    return "[[" + m.a.str() + "," + m.b.str() + "],[" + m.c.str() + "," + m.d.str() + "]]";
}

}  // namespace toralg
