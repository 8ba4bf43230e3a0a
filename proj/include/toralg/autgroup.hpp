#pragma once

// Automorphism predicate, generator synthesis from Pell fundamentals, and the
// exact semidirect-product group structure on torus rotations and generator
// powers.

#include "toralg/glmatrix.hpp"
#include "toralg/pell.hpp"
#include "toralg/quad.hpp"

namespace toralg {

/// Point of the 2-torus with exact rational angles: (e^{2πi t1}, e^{2πi t2}),
/// 0 <= t_j < 1 as reduced fractions.
struct TorusPoint {
    Rat t1{0}, t2{0};

    TorusPoint() = default;
    TorusPoint(Rat a, Rat b) : t1(mod1(a)), t2(mod1(b)) {}

    TorusPoint operator+(const TorusPoint& o) const { return {t1 + o.t1, t2 + o.t2}; }
    TorusPoint operator-() const { return {-t1, -t2}; }
    bool operator==(const TorusPoint&) const = default;
};

/// The torus automorphism (c1, c2) -> (c1^a c2^b, c1^c c2^d) induced by A,
/// in exact angle coordinates.
TorusPoint psi_action(const GLMatrix& A, const TorusPoint& c);

/// Element rotation(c) * generator^k of the semidirect product attached to a
/// fixed generator matrix.
struct AutElement {
    TorusPoint c;
    Int k{0};
    GLMatrix gen;
};

AutElement aut_identity(const GLMatrix& gen);
/// Semidirect law (c, m) * (d, n) = (c + psi^m(d), m + n). Throws DomainError
/// when the two elements carry different generator contexts.
AutElement multiply(const AutElement& g, const AutElement& h);
AutElement inverse(const AutElement& g);

/// The monomial map of A preserves the algebra of alpha iff m1 + alpha n1 > 0
/// and alpha is a root of n1 x^2 + (m1 - n2) x - m2.
bool is_automorphism_matrix(const GLMatrix& A, const QuadraticIrrational& alpha);

/// Positive eigenvalue m1 + alpha n1 of an automorphism matrix; checks
/// A [1, alpha]^T = lambda [1, alpha]^T exactly.
QfValue eigen_check(const GLMatrix& A, const QuadraticIrrational& alpha);

/// Generator synthesis result: the matrix, the Pell solution it was built
/// from, and the radical presentation that selected the construction.
struct GeneratorResult {
    GLMatrix matrix;
    PellSolution pell;
    RadicalForm form;
};

/// The matrix A0 whose powers are exactly the automorphism matrices of
/// alpha's algebra. Dispatches on the radical presentation of alpha and the
/// solvability of the corresponding (negative) Pell equation; the result is
/// re-verified before returning.
GeneratorResult generator(const QuadraticIrrational& alpha, PellCache* cache = nullptr);

/// Right-hand side of the generator-power conjugation identity: conjugating
/// the rotation by c with the k-th generator power yields the rotation by
/// this point, computed from the entries of gen^k and its determinant. Also
/// recomputes the same point through the group law and checks they agree.
TorusPoint conjugation_formula_check(const GLMatrix& gen, const Int& k, const TorusPoint& c);

}  // namespace toralg
