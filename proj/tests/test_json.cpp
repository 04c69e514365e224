#include <catch_amalgamated.hpp>

#include "triarr/json_io.hpp"

using namespace triarr;

TEST_CASE("arrangement documents round trip") {
    const RUA a = make_rua(6, {0, 1, 3, 5}, {2, 3, 4, 5}, {1, 2, 3, 4},
                           {Side::X, Side::Y, Side::Z});
    const json j = to_json(a);
    REQUIRE(j.at("modulus") == 6);
    REQUIRE(j.at("ea") == std::vector<int>{0, 1, 3, 5});
    REQUIRE(j.at("sides").size() == 3);
    REQUIRE(rua_from_json(j) == a);
    // extra keys are ignored on input
    json j2 = j;
    j2["realization"] = {{"outcome", "realized"}};
    REQUIRE(rua_from_json(j2) == a);
}

TEST_CASE("arrangement parsing validates content") {
    json j{{"modulus", 6},
           {"ea", {0, 0}},
           {"eb", json::array()},
           {"ec", json::array()},
           {"sides", {"X", "Y", "Z"}}};
    REQUIRE_THROWS_AS(rua_from_json(j), DuplicateExponent);
    j["sides"] = {"X", "Y", "W"};
    REQUIRE_THROWS(rua_from_json(j));
    j.erase("ea");
    REQUIRE_THROWS(rua_from_json(j));
}

TEST_CASE("combinatorics documents use 1-based indices") {
    const auto c = extract_combinatorics(full_monomial(2));
    const json j = to_json(c);
    for (const auto& t : j.at("triples"))
        for (const auto& v : t) REQUIRE(v.get<int>() >= 1);
    REQUIRE(combinatorics_from_json(j) == c);
}

TEST_CASE("combinatorics parsing validates triples") {
    json j{{"a", 3}, {"b", 3}, {"c", 3}, {"sides", {"X", "Y", "Z"}},
           {"triples", {{1, 1}}}};
    REQUIRE_THROWS(combinatorics_from_json(j));
    j["triples"] = {{1, 1, 5}};
    REQUIRE_THROWS_AS(combinatorics_from_json(j), InvalidSignature);
}

TEST_CASE("freeness reports serialize class, exponents, and the prime trail") {
    const auto rep = classify(full_monomial(2));
    const json j = to_json(rep);
    REQUIRE(j.at("class") == "free");
    REQUIRE(j.at("exponents") == std::vector<int>{3, 5});
    REQUIRE(j.at("primes").size() == 2);
    REQUIRE(j.at("all_primes_agree") == true);
    REQUIRE(j.contains("characteristic_note"));
    REQUIRE(j.contains("certificate_degrees"));
}

TEST_CASE("nearly free reports carry the jumping point") {
    const auto rep = classify(section6_pair().second, 1);
    const json j = to_json(rep);
    REQUIRE(j.at("class") == "nearly_free");
    REQUIRE(j.contains("jumping_point"));
    REQUIRE_FALSE(j.contains("certificate_degrees"));
}

TEST_CASE("prediction serialization covers all verdicts") {
    REQUIRE(to_json(Prediction::free(3, 5)).at("verdict") == "free");
    REQUIRE(to_json(Prediction::free(3, 5)).at("exponents") == std::vector<int>{3, 5});
    const json nf = to_json(Prediction::not_free("why"));
    REQUIRE(nf.at("verdict") == "not_free");
    REQUIRE(nf.at("reason") == "why");
    REQUIRE(to_json(Prediction::not_applicable("x")).at("verdict") == "not_applicable");
}

TEST_CASE("weak combinatorics maps multiplicities to counts") {
    const json j = to_json(t_vector(full_monomial(2)));
    REQUIRE(j.at("2") == 6);
    REQUIRE(j.at("3") == 4);
    REQUIRE(j.at("4") == 3);
}
