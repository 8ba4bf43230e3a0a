#include "toralg/iso.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace toralg {

namespace {

bool cyclic_rotation_of(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t& shift) {
    if (a.size() != b.size()) return false;
    std::size_t L = a.size();
    for (std::size_t j = 0; j < L; ++j) {
        bool ok = true;
        for (std::size_t i = 0; i < L && ok; ++i)
            ok = (b[(j + i) % L] == a[i]);
        if (ok) { shift = j; return true; }
    }
    return false;
}

GLMatrix digit_matrix(const Int& a) { return {a, 1, 1, 0}; }

QfValue moebius(const GLMatrix& m, const QfValue& x) {
    return (QfValue(Rat(m.a)) * x + QfValue(Rat(m.b))) /
           (QfValue(Rat(m.c)) * x + QfValue(Rat(m.d)));
}

/// Bounded witness search: enumerate coprime top rows, solve the
/// second row exactly from the witness equation, keep GL(2,Z) hits.
std::optional<GLMatrix> witness_search(const QuadraticIrrational& alpha,
                                       const QuadraticIrrational& beta, long bound) {
    QfValue av(alpha), bv(beta);
    for (long m1 = -bound; m1 <= bound; ++m1) {
        for (long n1 = -bound; n1 <= bound; ++n1) {
            if (gcd(Int(std::abs(m1)), Int(std::abs(n1))) != 1) continue;
            if (sign_linear(m1, n1, beta) != 1) continue;
            // m2 + beta n2 = alpha (m1 + beta n1) determines (m2, n2)
            QfValue rhs = av * (QfValue(Rat(m1)) + bv * QfValue(Rat(n1)));
            // rhs = x + y sqrt(d); n2 = y w / v must be an integer, then
            // m2 = x - n2 u / w must be an integer
            Rat y = rhs.radical_part();
            Rat n2r = y * beta.w() / beta.v();
            if (denominator(n2r) != 1) continue;
            Int n2 = numerator(n2r);
            Rat m2r = rhs.rational_part() - Rat(n2 * beta.u(), beta.w());
            if (denominator(m2r) != 1) continue;
            Int m2 = numerator(m2r);
            if (abs(m2) > bound || abs(n2) > bound) continue;
            GLMatrix A{m1, n1, m2, n2};
            if (!A.unimodular()) continue;
            if (verify_iso_witness(A, alpha, beta)) return A;
        }
    }
    return std::nullopt;
}

}  // namespace

bool verify_iso_witness(const GLMatrix& A, const QuadraticIrrational& alpha,
                        const QuadraticIrrational& beta) {
    if (!A.unimodular()) return false;
    if (sign_linear(A.a, A.b, beta) != 1) return false;
    QfValue av(alpha), bv(beta);
    QfValue lhs = QfValue(Rat(A.c)) + bv * QfValue(Rat(A.d));
    QfValue rhs = av * (QfValue(Rat(A.a)) + bv * QfValue(Rat(A.b)));
    return (lhs - rhs).is_zero();
}

IsoResult is_isomorphic(const QuadraticIrrational& alpha, const QuadraticIrrational& beta,
                        long fallback_bound) {
    if (alpha.d() != beta.d()) return {false, std::nullopt};
    if (alpha == beta) return {true, IsoWitness{GLMatrix::identity(), true}};

    CfDetail da = continued_fraction_detail(alpha);
    CfDetail db = continued_fraction_detail(beta);
    std::vector<Int> per_a(da.digits.begin() + static_cast<long>(da.preperiod_len), da.digits.end());
    std::vector<Int> per_b(db.digits.begin() + static_cast<long>(db.preperiod_len), db.digits.end());
    std::size_t shift = 0;
    if (!cyclic_rotation_of(per_a, per_b, shift)) return {false, std::nullopt};

    // beta = M_b M_rot (alpha_cycle) and alpha = M_a (alpha_cycle), where
    // M_rot advances beta's cycle to the complete quotient shared with alpha
    GLMatrix Ma = GLMatrix::identity();
    for (std::size_t i = 0; i < da.preperiod_len; ++i) Ma = Ma * digit_matrix(da.digits[i]);
    GLMatrix Mb = GLMatrix::identity();
    for (std::size_t i = 0; i < db.preperiod_len; ++i) Mb = Mb * digit_matrix(db.digits[i]);
    GLMatrix Mrot = GLMatrix::identity();
    for (std::size_t i = 0; i < shift; ++i)
        Mrot = Mrot * digit_matrix(db.digits[db.preperiod_len + i]);

    // shared state sanity: the shifted complete quotients must agree exactly
    if (!(db.states[db.preperiod_len + shift] == da.states[da.preperiod_len]))
        throw std::logic_error("matching period words with mismatched complete quotients");

    GLMatrix C = Mb * Mrot * Ma.inverse();
    if (!(moebius(C, QfValue(alpha)) == QfValue(beta)))
        throw std::logic_error("convergent-matrix composition does not carry alpha to beta");
    // witness in the row arrangement of the isomorphism condition, from
    // alpha = Moebius(C^{-1})(beta)
    GLMatrix Ci = C.inverse();
    GLMatrix A{Ci.d, Ci.c, Ci.b, Ci.a};
    if (sign_linear(A.a, A.b, beta) < 0) A = -A;
    if (verify_iso_witness(A, alpha, beta)) return {true, IsoWitness{A, true}};
    // construction failed verification: fall back to the bounded search
    if (auto found = witness_search(alpha, beta, fallback_bound))
        return {true, IsoWitness{*found, true}};
    throw std::logic_error("tail-equivalent values without a verifiable witness");
}

// ---------------------------------------------------------------------------
// GL(2,Z) conjugacy

namespace {

constexpr std::int64_t kInt64Guard = std::int64_t{1} << 31;

template <typename T>
T tfloor_div(const T& a, const T& b) {
    T q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

template <typename T>
T tceil_div(const T& a, const T& b) {
    return -tfloor_div<T>(-a, b);
}

inline long to_long(const std::int64_t& x) { return static_cast<long>(x); }
inline long to_long(const Int& x) { return x.convert_to<long>(); }

/// Enumerate C = [[a,b],[c,d]], |entries| <= bound, det = ±1, with A C = C B.
/// Top rows are coprime (forced by the determinant), and for a fixed top row
/// the determinant equation leaves a one-parameter family for the bottom row.
template <typename T>
std::optional<GLMatrix> conjugator_search_impl(T Aa, T Ab, T Ac, T Ad, T Ba, T Bb, T Bc, T Bd,
                                               long bound) {
    for (long a = -bound; a <= bound; ++a) {
        for (long b = -bound; b <= bound; ++b) {
            auto [g, xa, xb] = extended_gcd<T>(T(a), T(b));
            if (g != 1) continue;  // also rejects (0, 0)
            for (int e : {1, -1}) {
                // particular solution of a*d - b*c = e
                T d0 = T(e) * xa, c0 = T(-e) * xb;
                // general solution: c = c0 + a t, d = d0 + b t
                long lo = -2 * bound - 2, hi = 2 * bound + 2;
                bool feasible = true;
                auto clamp_range = [&](T coeff, T base) {
                    // constrain t so that |base + coeff t| <= bound
                    if (coeff == 0) {
                        if (base < T(-bound) || base > T(bound)) feasible = false;
                        return;
                    }
                    T tlo, thi;
                    if (coeff > 0) {
                        tlo = tceil_div<T>(T(-bound) - base, coeff);
                        thi = tfloor_div<T>(T(bound) - base, coeff);
                    } else {
                        T cc = -coeff;
                        tlo = tceil_div<T>(base - T(bound), cc);
                        thi = tfloor_div<T>(base + T(bound), cc);
                    }
                    if (tlo > thi) { feasible = false; return; }
                    lo = std::max(lo, to_long(tlo));
                    hi = std::min(hi, to_long(thi));
                };
                clamp_range(T(a), c0);
                clamp_range(T(b), d0);
                if (!feasible || lo > hi) continue;
                for (long t = lo; t <= hi; ++t) {
                    T c = c0 + T(a) * T(t);
                    T d = d0 + T(b) * T(t);
                    if (c < T(-bound) || c > T(bound) || d < T(-bound) || d > T(bound)) continue;
                    // A C == C B, entrywise
                    if (Aa * T(a) + Ab * c != T(a) * Ba + T(b) * Bc) continue;
                    if (Aa * T(b) + Ab * d != T(a) * Bb + T(b) * Bd) continue;
                    if (Ac * T(a) + Ad * c != c * Ba + d * Bc) continue;
                    if (Ac * T(b) + Ad * d != c * Bb + d * Bd) continue;
                    return GLMatrix{Int(a), Int(b), Int(c), Int(d)};
                }
            }
        }
    }
    return std::nullopt;
}

bool fits_int64(const GLMatrix& m) {
    return abs(m.a) < kInt64Guard && abs(m.b) < kInt64Guard && abs(m.c) < kInt64Guard &&
           abs(m.d) < kInt64Guard;
}

std::optional<GLMatrix> conjugator_search(const GLMatrix& A, const GLMatrix& B, long bound) {
    if (fits_int64(A) && fits_int64(B) && bound <= (1L << 20)) {
        return conjugator_search_impl<std::int64_t>(
            A.a.convert_to<std::int64_t>(), A.b.convert_to<std::int64_t>(),
            A.c.convert_to<std::int64_t>(), A.d.convert_to<std::int64_t>(),
            B.a.convert_to<std::int64_t>(), B.b.convert_to<std::int64_t>(),
            B.c.convert_to<std::int64_t>(), B.d.convert_to<std::int64_t>(), bound);
    }
    return conjugator_search_impl<Int>(A.a, A.b, A.c, A.d, B.a, B.b, B.c, B.d, bound);
}

}  // namespace

ConjugacyVerdict gl2_conjugate(const GLMatrix& A, const GLMatrix& B, long bound) {
    if (!A.unimodular() || !B.unimodular()) throw DomainError("matrices must be in GL(2,Z)");
    if (bound < 1) throw DomainError("search bound must be >= 1");
    ConjugacyVerdict v;
    if (A == B) {
        v.kind = ConjugacyVerdict::Kind::Yes;
        v.conjugator = GLMatrix::identity();
        return v;
    }
    if (A.det() != B.det()) {
        v.kind = ConjugacyVerdict::Kind::No;
        v.reason = "determinant mismatch: " + A.det().str() + " vs " + B.det().str();
        return v;
    }
    if (A.trace() != B.trace()) {
        v.kind = ConjugacyVerdict::Kind::No;
        v.reason = "trace mismatch: " + A.trace().str() + " vs " + B.trace().str();
        return v;
    }
    for (long pass : {std::min(3L, bound), bound}) {
        if (auto C = conjugator_search(A, B, pass)) {
            if (!(C->inverse() * A * *C == B))
                throw std::logic_error("conjugator failed exact verification");
            v.kind = ConjugacyVerdict::Kind::Yes;
            v.conjugator = *C;
            return v;
        }
        if (pass == bound) break;
    }
    v.kind = ConjugacyVerdict::Kind::Unknown;
    v.bound = bound;
    return v;
}

ConjugacyVerdict aut_isomorphic(const QuadraticIrrational& alpha, const QuadraticIrrational& beta,
                                long bound, PellCache* cache) {
    GLMatrix A = generator(alpha, cache).matrix;
    GLMatrix B = generator(beta, cache).matrix;
    ConjugacyVerdict direct = gl2_conjugate(A, B, bound);
    if (direct.kind == ConjugacyVerdict::Kind::Yes) return direct;
    ConjugacyVerdict inv = gl2_conjugate(A, B.inverse(), bound);
    if (inv.kind == ConjugacyVerdict::Kind::Yes) return inv;
    if (direct.kind == ConjugacyVerdict::Kind::No && inv.kind == ConjugacyVerdict::Kind::No) {
        ConjugacyVerdict v;
        v.kind = ConjugacyVerdict::Kind::No;
        v.reason = "generator: " + direct.reason + "; inverse generator: " + inv.reason;
        return v;
    }
    ConjugacyVerdict v;
    v.kind = ConjugacyVerdict::Kind::Unknown;
    v.bound = bound;
    return v;
}

ConjectureReport conjecture_scan(const std::vector<QuadraticIrrational>& corpus, long bound,
                                 PellCache* cache) {
    ConjectureReport report;
    for (const auto& alpha : corpus) {
        ConjectureEntry entry{alpha, generator(alpha, cache).matrix, false, {}};
        if (entry.gen.det() == 1) {
            entry.applicable = true;
            entry.verdict = gl2_conjugate(entry.gen, entry.gen.inverse(), bound);
            switch (entry.verdict.kind) {
                case ConjugacyVerdict::Kind::Yes: ++report.yes; break;
                case ConjugacyVerdict::Kind::No: ++report.no; break;
                case ConjugacyVerdict::Kind::Unknown: ++report.unknown; break;
            }
        } else {
            ++report.not_applicable;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace toralg
