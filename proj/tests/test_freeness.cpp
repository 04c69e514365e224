#include <catch_amalgamated.hpp>

#include "triarr/analysis.hpp"
#include "triarr/freeness.hpp"

using namespace triarr;

TEST_CASE("full_monomial(2) is free with exponents (3,5)") {
    const auto rep = classify(full_monomial(2));
    REQUIRE(rep.cls == FreeClass::Free);
    REQUIRE(rep.e1 == 3);
    REQUIRE(rep.e2 == 5);
    REQUIRE(rep.mdr_value == 3);
    REQUIRE(rep.c2_value == 15);
    REQUIRE(rep.all_agree);
    REQUIRE(rep.certificate_degrees.has_value());
}

TEST_CASE("h0 profile of a free arrangement matches the split-bundle model") {
    const RUA a = full_monomial(2);
    const PrimeField f = find_field(2, 1u << 20);
    for (int k = 0; k <= 8; ++k) {
        const int expect = static_cast<int>(binom2(k - 3 + 2)) + static_cast<int>(binom2(k - 5 + 2));
        REQUIRE(h0_log(a, f, k) == expect);
    }
}

TEST_CASE("log sections are tangent and Euler-independent") {
    const RUA a = full_monomial(2);
    const PrimeField f = find_field(2, 1u << 20);
    const auto secs = log_sections(a, f, 3);
    REQUIRE(secs.size() == 1);
    REQUIRE(is_tangent(a, f, secs.front()));
    REQUIRE(log_sections(a, f, 2).empty());
}

TEST_CASE("Saito certificate determinant is proportional to the equation") {
    const RUA a = full_monomial(2);
    const PrimeField f = find_field(2, 1u << 20);
    const auto cert = saito_certificate(a, f);
    REQUIRE(cert.has_value());
    REQUIRE(cert->scalar != 0);
    const HomForm3 det = saito_determinant(cert->theta1, cert->theta2, f);
    const HomForm3 eq = concrete_equation(a, f);
    REQUIRE(det.c == scale(eq, cert->scalar, f).c);
}

TEST_CASE("counterexample pair: free vs nearly free") {
    const auto [a0, a1] = section6_pair();
    const auto r0 = classify(a0);
    REQUIRE(r0.cls == FreeClass::Free);
    REQUIRE(r0.e1 == 7);
    REQUIRE(r0.e2 == 7);
    REQUIRE(r0.all_agree);

    const auto r1 = classify(a1);
    REQUIRE(r1.cls == FreeClass::NearlyFree);
    REQUIRE(r1.mdr_value == 6);
    REQUIRE(r1.e1 == 6);
    REQUIRE(r1.e2 == 9);
    REQUIRE(r1.all_agree);
    REQUIRE(r1.jumping_point.has_value());
    // normalize to first coordinate 1: the point is (1:1:1)
    const PrimeField f = find_field(a1.n, 1u << 20);
    const auto q = r1.jumping_point->coords;
    const std::uint64_t s = f.inv(q[0]);
    REQUIRE(f.mul(q[0], s) == 1);
    REQUIRE(f.mul(q[1], s) == 1);
    REQUIRE(f.mul(q[2], s) == 1);
}

TEST_CASE("base locus of the minimal free section is empty") {
    const auto [a0, a1] = section6_pair();
    const PrimeField f = find_field(a0.n, 1u << 20);
    for (const auto& s : log_sections(a0, f, 7)) {
        const auto locus = section_base_locus(a0, f, s);
        REQUIRE(locus.finite);
        REQUIRE(locus.points.empty());
    }
}

TEST_CASE("base locus of the nearly free section is one reduced point") {
    const auto a1 = section6_pair().second;
    const PrimeField f = find_field(a1.n, 1u << 20);
    const auto secs = log_sections(a1, f, 6);
    REQUIRE(secs.size() == 1);
    const auto locus = section_base_locus(a1, f, secs.front());
    REQUIRE(locus.finite);
    REQUIRE(locus.points.size() == 1);
    REQUIRE(base_point_reduced(a1, secs.front(), locus.points.front(), f));
}

TEST_CASE("brute-force and elimination base loci agree over a small field") {
    const auto a1 = section6_pair().second;
    const PrimeField small = find_field(a1.n, 100); // p < 10^4 takes the scan path
    const PrimeField big = find_field(a1.n, 1u << 20);
    const auto s_small = log_sections(a1, small, 6);
    const auto s_big = log_sections(a1, big, 6);
    REQUIRE(s_small.size() == 1);
    const auto l_small = section_base_locus(a1, small, s_small.front());
    const auto l_big = section_base_locus(a1, big, s_big.front());
    REQUIRE(l_small.finite);
    REQUIRE(l_small.points.size() == l_big.points.size());
}

TEST_CASE("ziegler exponents sum to line count minus one") {
    const RUA a = full_monomial(2);
    const PrimeField f = find_field(2, 1u << 20);
    for (const Line& l : a.lines()) {
        const auto [d1, d2] = ziegler_exponents(a, f, l);
        REQUIRE(d1 + d2 == static_cast<int>(a.line_count()) - 1);
        REQUIRE(d1 <= d2);
    }
    // side X of the free arrangement carries the exponents themselves
    const auto [z1, z2] = ziegler_exponents(a, f, {Family::SideX, -1});
    REQUIRE(z1 == 3);
    REQUIRE(z2 == 5);
    REQUIRE_THROWS_AS(ziegler_exponents(a, f, Line{Family::A, 5}), LineNotPresent);
}

TEST_CASE("curves through the triple points separate the pair") {
    const auto [a0, a1] = section6_pair();
    REQUIRE(curves_through_T(a1, find_field(a1.n, 1u << 20), 3) == 1);
    REQUIRE(curves_through_T(a0, find_field(a0.n, 1u << 20), 3) == 0);
    // no conditions means the full space of curves
    const RUA sides_only = make_rua(2, {0}, {1}, {}, {Side::X, Side::Y, Side::Z});
    REQUIRE(curves_through_T(sides_only, find_field(2, 1u << 20), 1) == 3);
}

TEST_CASE("multi-prime verdicts agree on easy instances") {
    for (const RUA& a : {full_monomial(2), full_monomial(3)}) {
        const auto rep = classify(a, 3);
        REQUIRE(rep.primes.size() == 3);
        REQUIRE(rep.all_agree);
    }
}

TEST_CASE("mdr is bounded and detected") {
    const PrimeField f = find_field(3, 1u << 20);
    const RUA a = full_monomial(3);
    REQUIRE(mdr(a, f) == 4);
    REQUIRE(h0_log(a, f, 3) == 0);
    REQUIRE(h0_log(a, f, 4) > 0);
}
