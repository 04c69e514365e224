#pragma once

#include <json.hpp>

#include "triarr/analysis.hpp"
#include "triarr/combinatorics.hpp"
#include "triarr/freeness.hpp"
#include "triarr/rua.hpp"

namespace triarr {

using json = nlohmann::json;

inline const char* side_name(Side s) {
    switch (s) {
        case Side::X: return "X";
        case Side::Y: return "Y";
        case Side::Z: return "Z";
    }
    return "?";
}

inline Side side_from_name(const std::string& s) {
    if (s == "X") return Side::X;
    if (s == "Y") return Side::Y;
    if (s == "Z") return Side::Z;
    throw std::invalid_argument("unknown side name: " + s);
}

inline json to_json(const RUA& a) {
    json sides = json::array();
    for (Side s : a.sides) sides.push_back(side_name(s));
    return json{{"modulus", a.n}, {"ea", a.ea}, {"eb", a.eb}, {"ec", a.ec}, {"sides", sides}};
}

inline RUA rua_from_json(const json& j) {
    std::set<Side> sides;
    for (const auto& s : j.at("sides")) sides.insert(side_from_name(s.get<std::string>()));
    return make_rua(j.at("modulus").get<int>(), j.at("ea").get<std::vector<int>>(),
                    j.at("eb").get<std::vector<int>>(), j.at("ec").get<std::vector<int>>(),
                    std::move(sides));
}

/// Combinatorics documents use 1-based inner-line indices.
inline json to_json(const AbstractCombinatorics& c) {
    json sides = json::array();
    for (Side s : c.sides) sides.push_back(side_name(s));
    json triples = json::array();
    for (const auto& t : c.triples) triples.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
    return json{{"a", c.a}, {"b", c.b}, {"c", c.c}, {"sides", sides}, {"triples", triples}};
}

inline AbstractCombinatorics combinatorics_from_json(const json& j) {
    AbstractCombinatorics c;
    c.a = j.at("a").get<int>();
    c.b = j.at("b").get<int>();
    c.c = j.at("c").get<int>();
    for (const auto& s : j.at("sides")) c.sides.insert(side_from_name(s.get<std::string>()));
    for (const auto& t : j.at("triples")) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("triple must have 3 indices");
        c.triples.push_back({t[0].get<int>() - 1, t[1].get<int>() - 1, t[2].get<int>() - 1});
    }
    validate_combinatorics(c);
    return c;
}

inline json to_json(const WeakCombinatorics& w) {
    json t = json::object();
    for (auto [m, cnt] : w.t) t[std::to_string(m)] = cnt;
    return t;
}

inline json combinatorics_report(const RUA& a) {
    const auto tv = t_vector(a);
    const auto hz = hirzebruch_check(a);
    json triples = json::array();
    for (const auto& t : inner_triples(a).triples) triples.push_back({t[0], t[1], t[2]});
    json rep{{"t", to_json(tv)},
             {"inner_triples", triples},
             {"c2", c2(a)},
             {"hirzebruch",
              {{"applicable", hz.applicable}, {"holds", hz.holds}, {"slack", hz.slack}}}};
    return rep;
}

inline json to_json(const FreenessReport& r) {
    json primes = json::array();
    for (const auto& v : r.primes)
        primes.push_back({{"p", v.p}, {"agree", v.agree}, {"class", to_string(v.cls)}});
    json rep{{"class", to_string(r.cls)},
             {"mdr", r.mdr_value},
             {"c2", r.c2_value},
             {"primes", primes},
             {"all_primes_agree", r.all_agree},
             {"characteristic_note",
              "classes are certified per prime field; agreement across the listed primes is "
              "the adopted evidence for characteristic zero"}};
    if (r.cls != FreeClass::Other) rep["exponents"] = {r.e1, r.e2};
    if (r.jumping_point)
        rep["jumping_point"] = {r.jumping_point->coords[0], r.jumping_point->coords[1],
                                r.jumping_point->coords[2]};
    if (r.certificate_degrees)
        rep["certificate_degrees"] = {r.certificate_degrees->first, r.certificate_degrees->second};
    return rep;
}

inline json to_json(const Prediction& p) {
    json j;
    switch (p.verdict) {
        case Prediction::Verdict::PredictFree:
            j["verdict"] = "free";
            j["exponents"] = {p.e1, p.e2};
            break;
        case Prediction::Verdict::PredictNotFree:
            j["verdict"] = "not_free";
            break;
        case Prediction::Verdict::NotApplicable:
            j["verdict"] = "not_applicable";
            break;
    }
    if (!p.reason.empty()) j["reason"] = p.reason;
    return j;
}

} // namespace triarr
