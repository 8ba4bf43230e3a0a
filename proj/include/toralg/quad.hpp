#pragma once

// Exact arithmetic, parsing, normalization, and continued fractions for
// positive quadratic irrationals (u + v*sqrt(D))/w.

#include "toralg/arith.hpp"
#include "toralg/glmatrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toralg {

/// Canonical positive quadratic irrational (u + v*sqrt(d)) / w.
///
/// Invariants: d squarefree >= 2, w >= 1, v != 0, gcd(u, v, w) = 1, value > 0.
/// Two equal values always have identical field tuples, so operator== is
/// field-wise and instances are safe map keys.
class QuadraticIrrational {
public:
    const Int& u() const { return u_; }
    const Int& v() const { return v_; }
    const Int& w() const { return w_; }
    const Int& d() const { return d_; }

    bool operator==(const QuadraticIrrational&) const = default;
    /// Lexicographic field order (for containers, not numeric order).
    bool operator<(const QuadraticIrrational& o) const {
        if (d_ != o.d_) return d_ < o.d_;
        if (w_ != o.w_) return w_ < o.w_;
        if (u_ != o.u_) return u_ < o.u_;
        return v_ < o.v_;
    }

private:
    QuadraticIrrational(Int u, Int v, Int w, Int d)
        : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)), d_(std::move(d)) {}
    Int u_, v_, w_, d_;
    friend QuadraticIrrational normalize(Int u, Int v, Int w, Int radicand);
};

/// Exact element a + b*sqrt(d) of a real quadratic field (a, b rational).
/// b == 0 is represented with d == 0 so rationals from different fields compare equal.
class QfValue {
public:
    QfValue() = default;
    QfValue(Rat a, Rat b, Int d);
    explicit QfValue(Rat a) : a_(std::move(a)) {}
    explicit QfValue(const QuadraticIrrational& q);

    const Rat& rational_part() const { return a_; }
    const Rat& radical_part() const { return b_; }
    const Int& radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    int sign() const;

    QfValue operator+(const QfValue& o) const;
    QfValue operator-(const QfValue& o) const;
    QfValue operator*(const QfValue& o) const;
    QfValue operator/(const QfValue& o) const;
    QfValue operator-() const { return QfValue(-a_, -b_, d_); }
    bool operator==(const QfValue&) const = default;

private:
    Int common_radicand(const QfValue& o) const;
    Rat a_{0}, b_{0};
    Int d_{0};
};

/// One of the two radical presentations used by the generator construction:
/// sqrt(p/q), or r/s + k*sqrt(p/q) with k = +-1.
struct RadicalForm {
    enum class Kind { Sqrt, Affine };
    Kind kind{Kind::Sqrt};
    Int p{0}, q{1};  // radicand p/q in lowest terms
    Int r{0}, s{1};  // Affine: rational part r/s in lowest terms, r != 0
    int k{1};        // Affine: sign of the radical term
};

/// Eventually periodic continued fraction: preperiod digits followed by the
/// minimal repeating block (nonempty for every quadratic irrational).
struct ContinuedFraction {
    std::vector<Int> preperiod;
    std::vector<Int> period;
};

/// Expansion with the exact complete quotients alongside the digits.
/// digits.size() == states.size() == preperiod_len + period length;
/// states[i] is the value whose expansion is digits[i], digits[i+1], ...
struct CfDetail {
    std::vector<Int> digits;
    std::size_t preperiod_len{0};
    std::vector<QfValue> states;
};

QuadraticIrrational normalize(Int u, Int v, Int w, Int radicand);

/// Parse the expression grammar (see README). Throws ParseError on malformed
/// text and DomainError when the value is rational, nonpositive, or not a
/// quadratic irrational.
QuadraticIrrational parse(std::string_view text);

/// Canonical rendering; parse(render(x)) == x.
std::string render(const QuadraticIrrational& q);

std::string render(const QfValue& value);

RadicalForm to_radical_form(const QuadraticIrrational& alpha);

/// Rebuild the value denoted by a RadicalForm (round-trip companion).
QuadraticIrrational from_radical_form(const RadicalForm& form);

/// Exact sign of m + n*alpha, by integer comparisons only.
int sign_linear(const Int& m, const Int& n, const QuadraticIrrational& alpha);

ContinuedFraction continued_fraction(const QuadraticIrrational& alpha);
CfDetail continued_fraction_detail(const QuadraticIrrational& alpha);

/// Sign of n1*alpha^2 + (m1 - n2)*alpha - m2 for A = [[m1,n1],[m2,n2]];
/// returns 0 exactly when alpha is a root.
int eval_quadratic(const GLMatrix& A, const QuadraticIrrational& alpha);

/// Convergent numerator/denominator pairs (p_k, q_k), k = 0..count-1, of the
/// expansion obtained by repeating the period forever.
std::vector<std::pair<Int, Int>> convergents(const ContinuedFraction& cf, std::size_t count);

}  // namespace toralg
