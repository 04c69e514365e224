#include <catch_amalgamated.hpp>

#include "triarr/rua.hpp"

using namespace triarr;

TEST_CASE("make_rua normalizes and sorts exponents") {
    const RUA a = make_rua(6, {7, -1, 3}, {0}, {2}, {Side::X, Side::Y, Side::Z});
    REQUIRE(a.ea == std::vector<int>{1, 3, 5});
    REQUIRE(a.line_count() == 8);
}

TEST_CASE("make_rua rejects duplicates and degenerate inputs") {
    REQUIRE_THROWS_AS(make_rua(6, {1, 7}, {}, {}, {Side::X, Side::Y, Side::Z}),
                      DuplicateExponent);
    REQUIRE_THROWS_AS(make_rua(6, {0}, {1}, {}, {}), EmptyArrangement);
    // pencil through one vertex
    REQUIRE_THROWS_AS(make_rua(6, {0, 1, 2}, {}, {}, {Side::X, Side::Y}), EmptyArrangement);
    // inner pencil: one line per family with exponents summing to 0
    REQUIRE_THROWS_AS(make_rua(6, {1}, {2}, {3}, {}), EmptyArrangement);
    REQUIRE_THROWS_AS(make_rua(0, {0}, {0}, {0}, {}), InvalidSignature);
}

TEST_CASE("full_monomial has 3N+3 lines and signature (N+1,N+1,N+1)") {
    for (int N : {1, 2, 5}) {
        const RUA a = full_monomial(N);
        REQUIRE(a.line_count() == static_cast<std::size_t>(3 * N + 3));
        const auto s = tr_signature(a);
        REQUIRE(s.a == N + 1);
        REQUIRE(s.b == N + 1);
        REQUIRE(s.c == N + 1);
        REQUIRE(s.sides.size() == 3);
    }
}

TEST_CASE("delete_lines removes exactly the named lines") {
    const RUA a = full_monomial(3);
    const RUA b = delete_lines(a, {{Family::A, 1}, {Family::SideZ, -1}});
    REQUIRE(b.ea == std::vector<int>{0, 2});
    REQUIRE_FALSE(b.has_side(Side::Z));
    REQUIRE(b.line_count() == a.line_count() - 2);
    REQUIRE_THROWS_AS(delete_lines(a, {{Family::A, 5}}), LineNotPresent);
    REQUIRE_THROWS_AS(delete_lines(b, {{Family::SideZ, -1}}), LineNotPresent);
}

TEST_CASE("complement_in and rescale_to embed into a larger modulus") {
    const RUA a = make_rua(3, {0, 1}, {0, 2}, {1}, {Side::X, Side::Y, Side::Z});
    const auto comp = complement_in(a, 6);
    // rescaled exponents double; each family misses 6 - |family| lines
    REQUIRE(comp.size() == (6 - 2) + (6 - 2) + (6 - 1));
    const RUA r = rescale_to(a, 6);
    REQUIRE(r.n == 6);
    REQUIRE(r.ea == std::vector<int>{0, 2});
    REQUIRE(r.ec == std::vector<int>{2});
    // complement + arrangement = full monomial
    RUA back = delete_lines(full_monomial(6), comp);
    REQUIRE(back == r);
    REQUIRE_THROWS_AS(complement_in(a, 5), NotEmbeddable);
}

TEST_CASE("line covectors vanish at the right vertices") {
    const PrimeField f = find_field(6, 101);
    const RUA a = full_monomial(6);
    for (const Line& l : a.lines()) {
        const auto v = line_covector(l, f);
        auto on = [&](std::array<std::uint64_t, 3> p) {
            return f.add(f.add(f.mul(v[0], p[0]), f.mul(v[1], p[1])), f.mul(v[2], p[2])) == 0;
        };
        switch (l.family) {
            case Family::A: REQUIRE(on({0, 0, 1})); break;  // P1
            case Family::B: REQUIRE(on({1, 0, 0})); break;  // P2
            case Family::C: REQUIRE(on({0, 1, 0})); break;  // P3
            case Family::SideX: REQUIRE((on({0, 0, 1}) && on({0, 1, 0}))); break;
            case Family::SideY: REQUIRE((on({0, 0, 1}) && on({1, 0, 0}))); break;
            case Family::SideZ: REQUIRE((on({1, 0, 0}) && on({0, 1, 0}))); break;
        }
    }
}

TEST_CASE("concrete_equation is the product of the line forms") {
    const PrimeField f = find_field(2, 101);
    const RUA a = full_monomial(2);
    const HomForm3 eq = concrete_equation(a, f);
    REQUIRE(eq.degree == static_cast<int>(a.line_count()));
    // vanishes on every line, nonzero at a generic point
    for (const Line& l : a.lines())
        REQUIRE(restrict_to_line(eq, line_covector(l, f), f).is_zero());
    REQUIRE(evaluate(eq, {3, 5, 7}, f) != 0);
    // zeta = -1 mod p for n = 2: x^2 - y^2 etc., leading coefficient 1
    REQUIRE(f.n == 2);
    PrimeField wrong = find_field(3, 101);
    REQUIRE_THROWS_AS(concrete_equation(a, wrong), ModulusMismatch);
}

TEST_CASE("lines enumeration is stable and sides are flagged") {
    const RUA a = make_rua(4, {0, 1}, {2}, {3}, {Side::Y});
    const auto ls = a.lines();
    REQUIRE(ls.size() == 5);
    int side_count = 0;
    for (const auto& l : ls) side_count += l.is_side() ? 1 : 0;
    REQUIRE(side_count == 1);
}
