#pragma once

// Fourier-support model of the algebras: sparse trigonometric polynomials on
// the 2-torus, exact membership, monomial maps, Cesàro means, and the
// rational-approximation measures. Coefficients are floating complex values;
// every membership or annihilation decision goes through exact integer
// arithmetic.

#include "toralg/autgroup.hpp"
#include "toralg/glmatrix.hpp"
#include "toralg/quad.hpp"

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace toralg {

/// Finite map from lattice points (m, n) to complex coefficients; stored
/// coefficients always have modulus >= the pruning threshold.
class TrigPoly {
public:
    using Key = std::pair<Int, Int>;
    using Coeffs = std::map<Key, std::complex<double>>;
    static constexpr double kPruneEps = 1e-15;

    TrigPoly() = default;

    static TrigPoly character(Int m, Int n, std::complex<double> coeff = {1.0, 0.0});

    void add(const Int& m, const Int& n, std::complex<double> coeff);
    std::complex<double> at(const Int& m, const Int& n) const;
    const Coeffs& coeffs() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;  // support convolution
    TrigPoly scaled(std::complex<double> factor) const;

private:
    Coeffs coeffs_;
};

/// exp(2*pi*i*t) for a rational angle.
std::complex<double> unit_circle(const Rat& t);

/// True iff every support point satisfies m + alpha n >= 0 (exact signs).
bool in_algebra(const TrigPoly& f, const QuadraticIrrational& alpha);

/// Monomial map of A = [[m1,n1],[m2,n2]] with unimodular constants: support
/// point (m, n) goes to (m m1 + n m2, m n1 + n n2) and the coefficient picks
/// up c1^m c2^n. The support map is a bijection for det = ±1.
TrigPoly apply_map(const TrigPoly& f, const GLMatrix& A, const TorusPoint& c);
TrigPoly apply_map(const TrigPoly& f, const GLMatrix& A, std::complex<double> c1,
                   std::complex<double> c2);

/// Rotation f(z, w) -> f(a z, b w): coefficient at (m, n) times a^m b^n.
TrigPoly rotation(const TrigPoly& f, std::complex<double> a, std::complex<double> b);
TrigPoly rotation(const TrigPoly& f, const TorusPoint& c);

/// Tensor Fejér mean: coefficient at (j, k) scaled by
/// max(0, 1 - |j|/(n+1)) * max(0, 1 - |k|/(m+1)). The support never grows.
TrigPoly cesaro(const TrigPoly& f, const Int& n, const Int& m);

/// Substitution z = zeta^q, w = zeta^p: support point (m, n) contributes to
/// the single exponent m q + n p; colliding exponents sum.
struct SubstitutionResult {
    std::map<Int, std::complex<double>> exponents;
    bool injective{true};
};
SubstitutionResult substitute(const TrigPoly& f, const Int& p, const Int& q);

/// (mu_k(f), mu(f)): the line-average of f along theta -> (e^{i q_k theta},
/// e^{i p_k theta}) — the coefficient sum over support points annihilated by
/// m q_k + n p_k = 0 — and the plain (0,0) coefficient.
std::pair<std::complex<double>, std::complex<double>> measure_pair(const TrigPoly& f,
                                                                   const Int& p_k,
                                                                   const Int& q_k);

/// Text format: one "m n re im" line per coefficient. JSON alternative: array
/// of {"m":..,"n":..,"re":..,"im":..}. parse_poly sniffs the format.
TrigPoly parse_poly(std::string_view text);
std::string render_poly(const TrigPoly& f, bool json);

}  // namespace toralg
