#pragma once

// Isometric-isomorphism decision for the torus algebras, GL(2,Z) conjugacy of
// automorphism-group generators, and the conjugate-to-inverse evidence scan.

#include "toralg/autgroup.hpp"
#include "toralg/glmatrix.hpp"
#include "toralg/quad.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toralg {

/// Witness A = [[m1,n1],[m2,n2]] with m1 + beta n1 > 0 and
/// m2 + beta n2 = alpha (m1 + beta n1), checked exactly over the common field.
struct IsoWitness {
    GLMatrix matrix;
    bool verified{false};
};

struct IsoResult {
    bool isomorphic{false};
    std::optional<IsoWitness> witness;
};

/// Exact check of the witness condition above.
bool verify_iso_witness(const GLMatrix& A, const QuadraticIrrational& alpha,
                        const QuadraticIrrational& beta);

/// Decides whether the two algebras are isometrically isomorphic: true iff the
/// continued-fraction expansions share an eventual tail (equal minimal period
/// words up to cyclic rotation within the same field). Positive answers carry
/// an exactly verified witness built from convergent matrices.
IsoResult is_isomorphic(const QuadraticIrrational& alpha, const QuadraticIrrational& beta,
                        long fallback_bound = 30);

struct ConjugacyVerdict {
    enum class Kind { Yes, No, Unknown };
    Kind kind{Kind::Unknown};
    std::optional<GLMatrix> conjugator;  // set for Yes; C^{-1} A C = B exactly
    std::string reason;                  // set for No: the invariant that differs
    long bound{0};                       // search bound that was exhausted (Unknown)
};

/// Bounded decision of B = C^{-1} A C over C in GL(2,Z) with |entries| <=
/// bound. Fast negatives by determinant/trace mismatch; Unknown is a
/// first-class outcome when the bound is exhausted.
ConjugacyVerdict gl2_conjugate(const GLMatrix& A, const GLMatrix& B, long bound = 100);

/// Generator-conjugacy test for Aut-group isomorphism: yes iff the generator
/// of alpha is conjugate to the generator of beta or to its inverse.
ConjugacyVerdict aut_isomorphic(const QuadraticIrrational& alpha,
                                const QuadraticIrrational& beta, long bound = 100,
                                PellCache* cache = nullptr);

struct ConjectureEntry {
    QuadraticIrrational alpha;
    GLMatrix gen;
    bool applicable{false};  // false when det(gen) = -1 (statement concerns SL(2,Z))
    ConjugacyVerdict verdict;
};

struct ConjectureReport {
    std::vector<ConjectureEntry> entries;
    std::size_t yes{0}, no{0}, unknown{0}, not_applicable{0};
};

/// For each corpus entry with an SL(2,Z) generator, records whether the
/// generator is conjugate to its inverse within the bound. Gathers evidence
/// only; unknown verdicts are never coerced.
ConjectureReport conjecture_scan(const std::vector<QuadraticIrrational>& corpus, long bound,
                                 PellCache* cache = nullptr);

}  // namespace toralg
