#include "toralg/quad.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

namespace toralg {

// ---------------------------------------------------------------------------
// QfValue

QfValue::QfValue(Rat a, Rat b, Int d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (b_ == 0) {
        d_ = 0;
    } else if (d_ < 2) {
        throw DomainError("QfValue radicand must be >= 2 when the radical part is nonzero");
    }
}

QfValue::QfValue(const QuadraticIrrational& q)
    : a_(Rat(q.u(), q.w())), b_(Rat(q.v(), q.w())), d_(q.d()) {}

Int QfValue::common_radicand(const QfValue& o) const {
    if (b_ == 0) return o.d_;
    if (o.b_ == 0) return d_;
    if (d_ != o.d_) throw DomainError("mixed radicands in quadratic-field arithmetic");
    return d_;
}

int QfValue::sign() const {
    // sign(a + b sqrt(d)) with a = p/q, b = r/s: sign(p s + r q sqrt(d))
    return sign_a_plus_b_sqrt(numerator(a_) * denominator(b_),
                              numerator(b_) * denominator(a_), d_);
}

QfValue QfValue::operator+(const QfValue& o) const {
    return QfValue(a_ + o.a_, b_ + o.b_, common_radicand(o));
}

QfValue QfValue::operator-(const QfValue& o) const {
    return QfValue(a_ - o.a_, b_ - o.b_, common_radicand(o));
}

QfValue QfValue::operator*(const QfValue& o) const {
    Int d = common_radicand(o);
    return QfValue(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

QfValue QfValue::operator/(const QfValue& o) const {
    if (o.is_zero()) throw DomainError("division by zero");
    Int d = common_radicand(o);
    // multiply by the conjugate; the norm a^2 - b^2 d is nonzero for nonzero o
    Rat norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    if (norm == 0) throw DomainError("division by zero norm");
    QfValue conj(o.a_, -o.b_, o.d_);
    QfValue num = *this * conj;
    return QfValue(num.a_ / norm, num.b_ / norm, d);
}

// ---------------------------------------------------------------------------
// normalize / radical form

QuadraticIrrational normalize(Int u, Int v, Int w, Int radicand) {
    if (w == 0) throw DomainError("zero denominator");
    if (radicand <= 0) throw DomainError("radicand must be positive");
    auto [d, f] = extract_square(std::move(radicand));
    v *= f;
    if (d == 1 || v == 0) throw DomainError("value is rational");
    if (w < 0) { u = -u; v = -v; w = -w; }
    Int g = gcd(gcd(abs(u), abs(v)), w);
    u /= g; v /= g; w /= g;
    if (sign_a_plus_b_sqrt(u, v, d) <= 0) throw DomainError("value is not positive");
    return QuadraticIrrational(std::move(u), std::move(v), std::move(w), std::move(d));
}

RadicalForm to_radical_form(const QuadraticIrrational& alpha) {
    RadicalForm form;
    // radicand p/q = v^2 d / w^2 in lowest terms; the radical absorbs v and w
    Rat pq(alpha.v() * alpha.v() * alpha.d(), alpha.w() * alpha.w());
    form.p = numerator(pq);
    form.q = denominator(pq);
    if (alpha.u() == 0) {
        form.kind = RadicalForm::Kind::Sqrt;
        return form;
    }
    form.kind = RadicalForm::Kind::Affine;
    Rat rs(alpha.u(), alpha.w());
    form.r = numerator(rs);
    form.s = denominator(rs);
    form.k = alpha.v() > 0 ? 1 : -1;
    return form;
}

QuadraticIrrational from_radical_form(const RadicalForm& form) {
    // sqrt(p/q) = sqrt(pq)/q, so r/s + k sqrt(p/q) = (r q + k s sqrt(pq)) / (s q)
    if (form.kind == RadicalForm::Kind::Sqrt)
        return normalize(0, 1, form.q, form.p * form.q);
    return normalize(form.r * form.q, Int(form.k) * form.s, form.s * form.q,
                     form.p * form.q);
}

// ---------------------------------------------------------------------------
// sign_linear / eval_quadratic

int sign_linear(const Int& m, const Int& n, const QuadraticIrrational& alpha) {
    // m + n alpha = ((m w + n u) + n v sqrt(d)) / w, w > 0
    return sign_a_plus_b_sqrt(m * alpha.w() + n * alpha.u(), n * alpha.v(), alpha.d());
}

int eval_quadratic(const GLMatrix& A, const QuadraticIrrational& alpha) {
    const Int& u = alpha.u();
    const Int& v = alpha.v();
    const Int& w = alpha.w();
    const Int& m1 = A.a;
    const Int& n1 = A.b;
    const Int& m2 = A.c;
    const Int& n2 = A.d;
    // n1 a^2 + (m1-n2) a - m2 over the common denominator w^2 splits into
    // rational and radical integer parts
    Int rational = n1 * (u * u + v * v * alpha.d()) + (m1 - n2) * u * w - m2 * w * w;
    Int radical = v * (2 * n1 * u + (m1 - n2) * w);
    return sign_a_plus_b_sqrt(rational, radical, alpha.d());
}

// ---------------------------------------------------------------------------
// continued fractions

CfDetail continued_fraction_detail(const QuadraticIrrational& alpha) {
    // Surd state (P + sqrt(N)) / Q with Q | N - P^2 enforced by pre-scaling.
    Int P, Q, N;
    Int scale = abs(alpha.v());
    N = alpha.v() * alpha.v() * alpha.d();
    if (alpha.v() > 0) { P = alpha.u(); Q = alpha.w(); }
    else { P = -alpha.u(); Q = -alpha.w(); }
    if ((N - P * P) % Q != 0) {
        Int q_abs = abs(Q);
        P *= q_abs;
        N *= Q * Q;
        Q *= q_abs;
        scale *= q_abs;
    }
    Int root = isqrt(N);

    CfDetail out;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<std::pair<Int, Int>> states;
    for (std::size_t step = 0;; ++step) {
        if (step > 200000) throw std::logic_error("continued fraction failed to cycle");
        auto key = std::make_pair(P, Q);
        if (auto it = seen.find(key); it != seen.end()) {
            out.preperiod_len = it->second;
            out.digits.resize(step);
            states.resize(step);
            break;
        }
        seen.emplace(key, step);
        states.emplace_back(P, Q);
        Int a = (Q > 0) ? floor_div(P + root, Q) : -floor_div(P + root, -Q) - 1;
        out.digits.push_back(a);
        Int Pn = a * Q - P;
        Int Qn = (N - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
    out.states.reserve(states.size());
    for (const auto& [sp, sq] : states) {
        // (sp + scale*sqrt(d)) / sq as an exact field element; sq may be negative
        out.states.emplace_back(make_rat(sp, sq), make_rat(scale, sq), alpha.d());
    }
    return out;
}

ContinuedFraction continued_fraction(const QuadraticIrrational& alpha) {
    CfDetail detail = continued_fraction_detail(alpha);
    ContinuedFraction cf;
    cf.preperiod.assign(detail.digits.begin(),
                        detail.digits.begin() + static_cast<long>(detail.preperiod_len));
    cf.period.assign(detail.digits.begin() + static_cast<long>(detail.preperiod_len),
                     detail.digits.end());
    return cf;
}

std::vector<std::pair<Int, Int>> convergents(const ContinuedFraction& cf, std::size_t count) {
    std::vector<std::pair<Int, Int>> out;
    out.reserve(count);
    Int p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    Int p_prev2 = 0, q_prev2 = 1;
    auto digit = [&](std::size_t k) -> const Int& {
        if (k < cf.preperiod.size()) return cf.preperiod[k];
        return cf.period[(k - cf.preperiod.size()) % cf.period.size()];
    };
    for (std::size_t k = 0; k < count; ++k) {
        const Int& a = digit(k);
        Int p = a * p_prev + p_prev2;
        Int q = a * q_prev + q_prev2;
        out.emplace_back(p, q);
        p_prev2 = std::move(p_prev);
        q_prev2 = std::move(q_prev);
        p_prev = out.back().first;
        q_prev = out.back().second;
    }
    return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

// value accumulator a + b*sqrt(d) during parsing; d == 0 while purely rational
struct ParsedValue {
    Rat a{0}, b{0};
    Int d{0};
};

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    ParsedValue run() {
        ParsedValue v = expr();
        skip_ws();
        if (i_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
        return false;
    }

    bool peek_keyword(std::string_view kw) {
        skip_ws();
        return s_.substr(i_, kw.size()) == kw;
    }

    Int integer() {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected integer");
        return Int(std::string(s_.substr(start, i_ - start)));
    }

    Rat rational() {
        skip_ws();
        bool neg = eat('-');
        Int num = integer();
        Int den = 1;
        if (eat('/')) {
            den = integer();
            if (den == 0) fail("zero denominator");
        }
        Rat r(num, den);
        return neg ? -r : r;
    }

    ParsedValue combine(const ParsedValue& x, const ParsedValue& y, int sgn) {
        ParsedValue out;
        out.a = x.a + sgn * y.a;
        out.b = x.b + sgn * y.b;
        if (x.b != 0 && y.b != 0 && x.d != y.d)
            throw NotQuadraticError("sum of radicals from different fields is not quadratic");
        out.d = x.b != 0 ? x.d : y.d;
        if (out.b == 0) out.d = 0;
        return out;
    }

    ParsedValue sqrt_term(const Rat& coeff) {
        // after the 'sqrt' keyword
        i_ += 4;
        if (!eat('(')) fail("expected '(' after sqrt");
        Rat rho = rational();
        if (!eat(')')) fail("expected ')'");
        if (rho < 0) throw DomainError("negative radicand");
        ParsedValue v;
        if (rho == 0) return v;
        // sqrt(n/m) = sqrt(n m)/m = f sqrt(d) / m
        auto [d, f] = extract_square(numerator(rho) * denominator(rho));
        Rat mag = coeff * Rat(f, denominator(rho));
        if (d == 1) { v.a = mag; return v; }
        v.b = mag;
        v.d = d;
        if (v.b == 0) v.d = 0;
        return v;
    }

    ParsedValue term() {
        skip_ws();
        if (i_ >= s_.size()) fail("unexpected end of input");
        if (s_[i_] == '(') {
            ++i_;
            ParsedValue v = expr();
            if (!eat(')')) fail("expected ')'");
            if (eat('/')) {
                Int den = integer();
                if (den == 0) fail("zero divisor");
                v.a /= den;
                v.b /= den;
                if (v.b == 0) v.d = 0;
            }
            return v;
        }
        if (peek_keyword("sqrt")) return sqrt_term(Rat(1));
        Rat r = rational();
        skip_ws();
        if (i_ < s_.size() && s_[i_] == '*') {
            ++i_;
            if (!peek_keyword("sqrt")) fail("expected sqrt after '*'");
            return sqrt_term(r);
        }
        ParsedValue v;
        v.a = r;
        return v;
    }

    ParsedValue expr() {
        ParsedValue first = term();
        skip_ws();
        if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
            int sgn = s_[i_] == '+' ? 1 : -1;
            ++i_;
            ParsedValue second = term();
            return combine(first, second, sgn);
        }
        return first;
    }
};

}  // namespace

QuadraticIrrational parse(std::string_view text) {
    ParsedValue v = Parser(text).run();
    if (v.b == 0) throw DomainError("value is rational");
    Int den = lcm(denominator(v.a), denominator(v.b));
    Int u = numerator(v.a) * (den / denominator(v.a));
    Int vv = numerator(v.b) * (den / denominator(v.b));
    return normalize(std::move(u), std::move(vv), std::move(den), v.d);
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string render_radical(const Int& v, const Int& d) {
    std::string root = "sqrt(" + d.str() + ")";
    Int av = abs(v);
    if (av == 1) return root;
    return av.str() + "*" + root;
}

}  // namespace

std::string render(const QuadraticIrrational& q) {
    std::string inner;
    if (q.u() == 0) {
        inner = render_radical(q.v(), q.d());  // v > 0 here: the value is positive
    } else {
        inner = q.u().str();
        inner += (q.v() > 0 ? "+" : "-");
        inner += render_radical(q.v(), q.d());
    }
    if (q.w() == 1) return inner;
    return "(" + inner + ")/" + q.w().str();
}

std::string render(const QfValue& value) {
    auto rat_str = [](const Rat& r) {
        std::string s = numerator(r).str();
        if (denominator(r) != 1) s += "/" + denominator(r).str();
        return s;
    };
    if (value.is_rational()) return rat_str(value.rational_part());
    if (value.sign() > 0) {
        // positive irrationals render in the canonical grammar
        const Rat& a = value.rational_part();
        const Rat& b = value.radical_part();
        Int den = lcm(denominator(a), denominator(b));
        return render(normalize(numerator(a) * (den / denominator(a)),
                                numerator(b) * (den / denominator(b)), den,
                                value.radicand()));
    }
    const Rat& b = value.radical_part();
    std::string root = "sqrt(" + value.radicand().str() + ")";
    std::string rad;
    Rat ab = b < 0 ? -b : b;
    if (ab == 1) rad = root;
    else rad = rat_str(ab) + "*" + root;
    if (value.rational_part() == 0) return (b < 0 ? "-" : "") + rad;
    return rat_str(value.rational_part()) + (b < 0 ? "-" : "+") + rad;
}

}  // namespace toralg
