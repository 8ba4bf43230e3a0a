#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toralg/cli.hpp"
#include "toralg/iso.hpp"

#include <map>
#include <vector>

using namespace toralg;

namespace {

QuadraticIrrational qi(const std::string& text) { return parse(text); }

// oracle: bounded witness search using only rational arithmetic
// on the radical decomposition (independent of the continued-fraction path)
std::optional<GLMatrix> oracle_witness(const QuadraticIrrational& alpha,
                                       const QuadraticIrrational& beta, long bound) {
    if (alpha.d() != beta.d()) return std::nullopt;
    Rat au(alpha.u(), alpha.w()), av(alpha.v(), alpha.w());
    Rat bu(beta.u(), beta.w()), bv(beta.v(), beta.w());
    const Int& d = alpha.d();
    for (long m1 = -bound; m1 <= bound; ++m1)
        for (long n1 = -bound; n1 <= bound; ++n1) {
            // m1 + beta n1, split into rational and radical coordinates
            Rat lin_rat = m1 + bu * n1;
            Rat lin_rad = bv * n1;
            int sgn = sign_a_plus_b_sqrt(numerator(lin_rat) * denominator(lin_rad),
                                         numerator(lin_rad) * denominator(lin_rat), d);
            if (sgn != 1) continue;
            // alpha (m1 + beta n1) = (au + av r)(lin_rat + lin_rad r), r = sqrt(d)
            Rat rhs_rat = au * lin_rat + av * lin_rad * d;
            Rat rhs_rad = au * lin_rad + av * lin_rat;
            // m2 + beta n2 matches iff n2 = rhs_rad / bv and m2 = rhs_rat - bu n2
            Rat n2r = rhs_rad / bv;
            if (denominator(n2r) != 1) continue;
            Int n2 = numerator(n2r);
            Rat m2r = rhs_rat - bu * n2r;
            if (denominator(m2r) != 1) continue;
            Int m2 = numerator(m2r);
            if (abs(m2) > bound || abs(n2) > bound) continue;
            GLMatrix A{m1, n1, m2, n2};
            if (!A.unimodular()) continue;
            return A;
        }
    return std::nullopt;
}

}  // namespace

TEST_CASE("is_isomorphic on the documented cases") {
    auto r5 = qi("sqrt(5)");
    auto self = is_isomorphic(r5, r5);
    CHECK(self.isomorphic);
    REQUIRE(self.witness);
    CHECK(self.witness->matrix == GLMatrix::identity());
    CHECK(self.witness->verified);

    auto shifted = is_isomorphic(r5, qi("2+sqrt(5)"));
    CHECK(shifted.isomorphic);
    REQUIRE(shifted.witness);
    CHECK(shifted.witness->verified);
    CHECK(verify_iso_witness(shifted.witness->matrix, r5, qi("2+sqrt(5)")));

    auto golden = is_isomorphic(r5, qi("(1+sqrt(5))/2"));
    CHECK(!golden.isomorphic);
    CHECK(!golden.witness);

    // different fields short-circuit
    CHECK(!is_isomorphic(r5, qi("sqrt(7)")).isomorphic);
}

TEST_CASE("the documented shift witness satisfies the exact condition") {
    // -2 + beta = sqrt(5) (1 + 0) for beta = 2 + sqrt(5)
    CHECK(verify_iso_witness(GLMatrix{1, 0, -2, 1}, qi("sqrt(5)"), qi("2+sqrt(5)")));
    CHECK(!verify_iso_witness(GLMatrix{1, 0, -2, 1}, qi("sqrt(5)"), qi("(1+sqrt(5))/2")));
}

TEST_CASE("is_isomorphic agrees with the bounded witness oracle on a small corpus") {
    auto values = corpus(2, 2, 2, 12);
    std::map<Int, std::vector<QuadraticIrrational>> by_field;
    for (const auto& q : values) by_field[q.d()].push_back(q);
    int positives = 0;
    for (const auto& [d, group] : by_field) {
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                auto oracle = oracle_witness(group[i], group[j], 30);
                auto decision = is_isomorphic(group[i], group[j]);
                if (oracle) {
                    CHECK_MESSAGE(decision.isomorphic, render(group[i]), " vs ",
                                  render(group[j]));
                }
                if (decision.isomorphic) {
                    ++positives;
                    REQUIRE(decision.witness);
                    CHECK(decision.witness->verified);
                    CHECK(verify_iso_witness(decision.witness->matrix, group[i], group[j]));
                }
            }
    }
    CHECK(positives > 0);
}

TEST_CASE("the reverse witness is the (sign-normalized) inverse matrix") {
    auto values = corpus(2, 2, 2, 12);
    std::map<Int, std::vector<QuadraticIrrational>> by_field;
    for (const auto& q : values) by_field[q.d()].push_back(q);
    int checked = 0;
    for (const auto& [d, group] : by_field)
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                auto fwd = is_isomorphic(group[i], group[j]);
                if (!fwd.isomorphic) continue;
                // A^{-1} up to sign, in the same row arrangement
                GLMatrix inv = fwd.witness->matrix.inverse();
                GLMatrix back = inv.det() == 1 ? inv : -inv;  // adjugate
                if (sign_linear(back.a, back.b, group[i]) < 0) back = -back;
                CHECK(verify_iso_witness(back, group[j], group[i]));
                ++checked;
            }
    CHECK(checked > 0);
}

TEST_CASE("is_isomorphic is an equivalence relation on a small corpus") {
    auto values = corpus(2, 1, 2, 10);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = 0; j < values.size(); ++j) {
            bool ij = is_isomorphic(values[i], values[j]).isomorphic;
            bool ji = is_isomorphic(values[j], values[i]).isomorphic;
            CHECK(ij == ji);
        }
    // transitivity over a known class: sqrt(5) ~ 2+sqrt(5) ~ (2+2*sqrt(5))/2...
    auto a = qi("sqrt(5)");
    auto b = qi("2+sqrt(5)");
    auto c = qi("1+sqrt(5)");
    if (is_isomorphic(a, b).isomorphic && is_isomorphic(b, c).isomorphic)
        CHECK(is_isomorphic(a, c).isomorphic);
}

TEST_CASE("gl2_conjugate fast negatives and bounded positives") {
    GLMatrix A{2, 1, 5, 2};
    GLMatrix B{0, 1, 1, 1};
    auto mismatch = gl2_conjugate(A, B, 50);
    CHECK(mismatch.kind == ConjugacyVerdict::Kind::No);
    CHECK(mismatch.reason.find("trace") != std::string::npos);

    auto self = gl2_conjugate(A, A, 50);
    CHECK(self.kind == ConjugacyVerdict::Kind::Yes);
    REQUIRE(self.conjugator);
    CHECK(*self.conjugator == GLMatrix::identity());

    GLMatrix fib{0, 1, 1, 1};
    GLMatrix fib_swapped{1, 1, 1, 0};
    auto conj = gl2_conjugate(fib, fib_swapped, 50);
    CHECK(conj.kind == ConjugacyVerdict::Kind::Yes);
    REQUIRE(conj.conjugator);
    CHECK(conj.conjugator->inverse() * fib * *conj.conjugator == fib_swapped);
    // the documented conjugator also verifies
    GLMatrix J{0, 1, 1, 0};
    CHECK(J.inverse() * fib * J == fib_swapped);

    // parabolic pair with equal trace and determinant but no conjugator:
    // bounded search must exhaust and return unknown
    GLMatrix P{1, 1, 0, 1};
    GLMatrix Q{1, 2, 0, 1};
    auto unknown = gl2_conjugate(P, Q, 12);
    CHECK(unknown.kind == ConjugacyVerdict::Kind::Unknown);
    CHECK(unknown.bound == 12);

    auto det_mismatch = gl2_conjugate(GLMatrix{2, 1, 5, 2}, GLMatrix{8, 3, 21, 8}, 10);
    CHECK(det_mismatch.kind == ConjugacyVerdict::Kind::No);
    CHECK(det_mismatch.reason.find("determinant") != std::string::npos);
}

TEST_CASE("aut_isomorphic on the documented cases") {
    auto r5 = qi("sqrt(5)");
    CHECK(aut_isomorphic(r5, r5).kind == ConjugacyVerdict::Kind::Yes);

    auto golden = aut_isomorphic(r5, qi("(1+sqrt(5))/2"));
    CHECK(golden.kind == ConjugacyVerdict::Kind::No);
    CHECK(golden.reason.find("trace") != std::string::npos);

    auto shifted = aut_isomorphic(r5, qi("2+sqrt(5)"));
    CHECK(shifted.kind == ConjugacyVerdict::Kind::Yes);
    REQUIRE(shifted.conjugator);
}

TEST_CASE("isomorphic algebras never get a negative aut verdict") {
    auto values = corpus(2, 1, 2, 10);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (!is_isomorphic(values[i], values[j]).isomorphic) continue;
            auto verdict = aut_isomorphic(values[i], values[j], 60);
            CHECK(verdict.kind != ConjugacyVerdict::Kind::No);
        }
}

TEST_CASE("a det -1 generator conjugacy comes with an algebra isomorphism") {
    // when both generators have determinant -1, conjugate generators force
    // the algebras themselves to be isomorphic; check the instances
    auto values = corpus(2, 1, 2, 10);
    int observed = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            GLMatrix A = generator(values[i]).matrix;
            GLMatrix B = generator(values[j]).matrix;
            if (A.det() != -1 || B.det() != -1) continue;
            if (gl2_conjugate(A, B, 60).kind != ConjugacyVerdict::Kind::Yes) continue;
            ++observed;
            CHECK_MESSAGE(is_isomorphic(values[i], values[j]).isomorphic,
                          render(values[i]), " vs ", render(values[j]));
        }
    CHECK(observed > 0);
}

TEST_CASE("conjecture scan over the reference values") {
    std::vector<QuadraticIrrational> values{qi("sqrt(7)"), qi("(1+sqrt(5))/2"),
                                            qi("(1+sqrt(7))/3")};
    auto report = conjecture_scan(values, 100);
    REQUIRE(report.entries.size() == 3);

    // sqrt(7): SL generator, conjugate to its inverse via diag(1,-1)
    const auto& e7 = report.entries[0];
    CHECK(e7.applicable);
    CHECK(e7.verdict.kind == ConjugacyVerdict::Kind::Yes);
    GLMatrix flip{1, 0, 0, -1};
    CHECK(flip.inverse() * e7.gen * flip == e7.gen.inverse());

    // golden ratio: generator has det -1, outside the statement's scope
    CHECK(!report.entries[1].applicable);

    // (1+sqrt(7))/3: SL generator, evidence recorded but never asserted
    const auto& e73 = report.entries[2];
    CHECK(e73.applicable);
    if (e73.verdict.kind == ConjugacyVerdict::Kind::Yes) {
        REQUIRE(e73.verdict.conjugator);
        CHECK(e73.verdict.conjugator->inverse() * e73.gen * *e73.verdict.conjugator ==
              e73.gen.inverse());
    } else {
        CHECK(e73.verdict.kind == ConjugacyVerdict::Kind::Unknown);
    }

    CHECK(report.yes + report.no + report.unknown == 2);
    CHECK(report.not_applicable == 1);
}
