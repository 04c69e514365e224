#include <catch_amalgamated.hpp>

#include <random>

#include "triarr/analysis.hpp"
#include "triarr/freeness.hpp"

using namespace triarr;

TEST_CASE("complete predictor on the counterexample pair") {
    const auto [a0, a1] = section6_pair();
    const auto p0 = predict_free_complete(a0, 6);
    REQUIRE(p0.verdict == Prediction::Verdict::PredictFree);
    REQUIRE(p0.e1 == 7);
    REQUIRE(p0.e2 == 7);
    const auto p1 = predict_free_complete(a1, 5);
    REQUIRE(p1.verdict == Prediction::Verdict::PredictNotFree);
}

TEST_CASE("complete predictor requires all sides") {
    const RUA a = delete_lines(full_monomial(3), {{Family::SideX, -1}});
    REQUIRE(predict_free_complete(a, 3).verdict == Prediction::Verdict::NotApplicable);
}

TEST_CASE("ci examples are free with exponents (a+b-1, c)") {
    for (auto [a, b, c] : {std::array<int, 3>{2, 2, 3}, {2, 3, 4}, {3, 3, 3}}) {
        const RUA g = ci_example(a, b, c);
        const auto rep = classify(g, 1);
        REQUIRE(rep.cls == FreeClass::Free);
        const int e1 = std::min(a + b - 1, c), e2 = std::max(a + b - 1, c);
        REQUIRE(rep.e1 == e1);
        REQUIRE(rep.e2 == e2);
    }
    REQUIRE_THROWS_AS(ci_example(1, 2, 3), InvalidSignature);
}

TEST_CASE("uncomplete predictor against the oracle on side deletions") {
    const int N = 3;
    // one, two, three sides removed from the full arrangement stay free
    const RUA d1 = delete_lines(full_monomial(N), {{Family::SideX, -1}});
    const RUA d2 = delete_lines(d1, {{Family::SideY, -1}});
    const RUA d3 = delete_lines(d2, {{Family::SideZ, -1}});
    for (const RUA& a : {d1, d2, d3}) {
        const auto pred = predict_free_uncomplete(a);
        const auto rep = classify(a, 1);
        REQUIRE(pred.verdict == Prediction::Verdict::PredictFree);
        REQUIRE(rep.cls == FreeClass::Free);
        REQUIRE(pred.e1 == rep.e1);
        REQUIRE(pred.e2 == rep.e2);
    }
    REQUIRE(predict_free_uncomplete(full_monomial(N)).verdict ==
            Prediction::Verdict::NotApplicable);
}

TEST_CASE("greedy deletion reaches the signature with minimal complement") {
    const auto [steps, a] = greedy_free_path(4, 3, 4, 4);
    const auto s = tr_signature(a);
    REQUIRE(s.a + s.b + s.c == 11);
    REQUIRE(steps.size() == 4);
    REQUIRE(complement_stats(a, 4).t_rem == min_trem(4, s.a, s.b, s.c));
}

TEST_CASE("addition-deletion bookkeeping") {
    REQUIRE(addition_deletion({3, 5}, 4) == std::make_pair(3, 4));
    REQUIRE(addition_deletion({3, 5}, 6) == std::make_pair(2, 5));
    REQUIRE_FALSE(addition_deletion({3, 5}, 5).has_value());
}

TEST_CASE("nearly free family members have matching invariants") {
    const auto [fm, nf] = nearly_free_family(2);
    REQUIRE(inner_triples(fm).size() == 12);
    REQUIRE(inner_triples(nf).size() == 12);
    REQUIRE(t_vector(fm).t == t_vector(nf).t);
    const auto r0 = classify(fm, 1);
    REQUIRE(r0.cls == FreeClass::Free);
    REQUIRE(r0.e1 == 7);
    REQUIRE(r0.e2 == 7);
    const auto r1 = classify(nf, 1);
    REQUIRE(r1.cls == FreeClass::NearlyFree);
    REQUIRE(r1.mdr_value == 6);
    REQUIRE_THROWS_AS(nearly_free_family(1), InvalidSignature);
}

TEST_CASE("complement identity holds on random embeddings") {
    std::mt19937_64 rng(31);
    int checked = 0;
    while (checked < 100) {
        const int N = 2 + static_cast<int>(rng() % 7); // up to 8
        std::vector<int> divs;
        for (int d = 1; d <= N; ++d)
            if (N % d == 0) divs.push_back(d);
        const int n = divs[rng() % divs.size()];
        std::vector<int> ea, eb, ec;
        for (int e = 0; e < n; ++e) {
            if (rng() % 2) ea.push_back(e);
            if (rng() % 2) eb.push_back(e);
            if (rng() % 2) ec.push_back(e);
        }
        RUA a;
        try {
            a = make_rua(n, ea, eb, ec, {Side::X, Side::Y, Side::Z});
        } catch (const triarr_error&) {
            continue;
        }
        REQUIRE(complement_stats(a, N).identity_holds);
        ++checked;
    }
}

TEST_CASE("complete predictor agrees with the oracle at N = 2") {
    const int N = 2;
    for (int mask = 0; mask < (1 << (3 * N)); ++mask) {
        std::vector<int> ea, eb, ec;
        for (int e = 0; e < N; ++e) {
            if (mask >> e & 1) ea.push_back(e);
            if (mask >> (N + e) & 1) eb.push_back(e);
            if (mask >> (2 * N + e) & 1) ec.push_back(e);
        }
        RUA a;
        try {
            a = make_rua(N, ea, eb, ec, {Side::X, Side::Y, Side::Z});
        } catch (const triarr_error&) {
            continue;
        }
        const auto pred = predict_free_complete(a, N);
        const auto rep = classify(a, 1);
        if (pred.verdict == Prediction::Verdict::PredictFree) {
            REQUIRE(rep.cls == FreeClass::Free);
            REQUIRE(pred.e1 == rep.e1);
            REQUIRE(pred.e2 == rep.e2);
        } else {
            REQUIRE(rep.cls != FreeClass::Free);
        }
    }
}
