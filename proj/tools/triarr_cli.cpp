#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "triarr/json_io.hpp"
#include "triarr/realization.hpp"

using namespace triarr;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitForced = 4;
constexpr int kExitExhausted = 5;
constexpr int kExitNoCertificate = 6;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TRIARR_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void emit(const json& doc, const std::string& out, bool pretty) {
    const std::string text = pretty ? doc.dump(2) : doc.dump();
    if (out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        os << text << "\n";
    }
}

json signature_json(const RUA& a) {
    const auto s = tr_signature(a);
    json sides = json::array();
    for (Side sd : a.sides) sides.push_back(side_name(sd));
    return json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"sides", sides}, {"lines", a.line_count()}};
}

json line_json(const Line& l) {
    switch (l.family) {
        case Family::A: return json{{"family", "A"}, {"exponent", l.exponent}};
        case Family::B: return json{{"family", "B"}, {"exponent", l.exponent}};
        case Family::C: return json{{"family", "C"}, {"exponent", l.exponent}};
        case Family::SideX: return json{{"side", "X"}};
        case Family::SideY: return json{{"side", "Y"}};
        case Family::SideZ: return json{{"side", "Z"}};
    }
    return json{};
}

int run_analyze(const std::string& input, int primes, const std::string& out, bool pretty) {
    const RUA a = rua_from_json(load_json(input));
    json rep;
    rep["arrangement"] = to_json(a);
    rep["signature"] = signature_json(a);
    rep["combinatorics"] = combinatorics_report(a);
    const auto tpl = triples_per_line(a);
    rep["triples_per_line"] = {{"A", tpl[0]}, {"B", tpl[1]}, {"C", tpl[2]}};

    ClassifyOptions opt;
    opt.primes = primes;
    opt.seed = default_seed();
    rep["freeness"] = to_json(classify(a, opt));

    const PrimeField f = find_field(a.n, opt.prime_floor);
    json zg = json::object();
    for (Side s : a.sides) {
        const Family fam = s == Side::X ? Family::SideX : s == Side::Y ? Family::SideY : Family::SideZ;
        const auto [d1, d2] = ziegler_exponents(a, f, Line{fam, -1});
        zg[side_name(s)] = {d1, d2};
    }
    rep["ziegler_sides"] = zg;
    emit(rep, out, pretty);
    return 0;
}

int run_realize(const std::string& input, std::uint64_t seed, const std::string& out, bool pretty) {
    RealizationProblem prob;
    prob.target = combinatorics_from_json(load_json(input));
    prob.seed = seed;
    RealizationResult res;
    try {
        res = realize_as_rua(prob);
    } catch (const SamplingExhausted& e) {
        emit(json{{"outcome", "exhausted"}, {"error", e.what()}}, out, pretty);
        return kExitExhausted;
    }
    if (res.outcome == RealizationResult::Outcome::Forced) {
        json rels = json::array();
        for (const auto& r : res.forced) rels.push_back(r.describe());
        emit(json{{"outcome", "forced"}, {"relations", rels}}, out, pretty);
        return kExitForced;
    }
    json doc = to_json(*res.rua);
    doc["realization"] = {{"outcome", "realized"}, {"modulus", res.modulus}, {"attempts", res.attempts}};
    emit(doc, out, pretty);
    return 0;
}

int run_complement(const std::string& input, int n_full, const std::string& out, bool pretty) {
    const RUA a = rua_from_json(load_json(input));
    const auto comp = complement_in(a, n_full);
    const auto stats = complement_stats(a, n_full);
    const auto s = tr_signature(a);
    json lines = json::array();
    for (const auto& l : comp) lines.push_back(line_json(l));
    json rep{{"N", n_full},
             {"signature", signature_json(a)},
             {"complement_lines", lines},
             {"t_rem", stats.t_rem},
             {"identity_holds", stats.identity_holds},
             {"min_trem", min_trem(n_full, s.a, s.b, s.c)},
             {"prediction", to_json(predict_free_complete(a, n_full))}};
    emit(rep, out, pretty);
    return 0;
}

bool prediction_agrees(const Prediction& p, const FreenessReport& r) {
    if (p.verdict == Prediction::Verdict::PredictFree)
        return r.cls == FreeClass::Free && p.e1 == r.e1 && p.e2 == r.e2;
    return r.cls != FreeClass::Free;
}

int run_enumerate(int N, const std::string& sides_mode, int primes, const std::string& out,
                  bool pretty) {
    if (N < 1 || N > 6) throw std::invalid_argument("enumerate supports 1 <= N <= 6");
    std::vector<std::set<Side>> side_sets;
    if (sides_mode == "all") {
        side_sets.push_back({Side::X, Side::Y, Side::Z});
    } else if (sides_mode == "subsets") {
        for (int m = 0; m < 8; ++m) {
            std::set<Side> s;
            if (m & 1) s.insert(Side::X);
            if (m & 2) s.insert(Side::Y);
            if (m & 4) s.insert(Side::Z);
            side_sets.push_back(std::move(s));
        }
    } else {
        throw std::invalid_argument("--sides must be all or subsets");
    }

    std::ostringstream buf;
    long long records = 0, skipped = 0, agree_cnt = 0, disagree = 0;
    long long n_free = 0, n_nearly = 0, n_other = 0;
    ClassifyOptions opt;
    opt.primes = primes;
    opt.seed = default_seed();

    const long long total_masks = 1LL << (3 * N);
    for (long long mask = 0; mask < total_masks; ++mask) {
        std::vector<int> ea, eb, ec;
        for (int e = 0; e < N; ++e) {
            if (mask & (1LL << e)) ea.push_back(e);
            if (mask & (1LL << (N + e))) eb.push_back(e);
            if (mask & (1LL << (2 * N + e))) ec.push_back(e);
        }
        for (const auto& ss : side_sets) {
            RUA a;
            try {
                a = make_rua(N, ea, eb, ec, ss);
            } catch (const triarr_error&) {
                ++skipped; // empty or pencil configuration
                continue;
            }
            json rec;
            rec["signature"] = signature_json(a);
            Prediction pred;
            if (a.sides.size() == 3) {
                rec["t_rem"] = complement_stats(a, N).t_rem;
                const auto s = tr_signature(a);
                rec["min_trem"] = min_trem(N, s.a, s.b, s.c);
                pred = predict_free_complete(a, N);
            } else {
                rec["t_rem"] = nullptr;
                rec["min_trem"] = nullptr;
                pred = predict_free_uncomplete(a);
            }
            rec["prediction"] = to_json(pred);
            const auto rep = classify(a, opt);
            rec["oracle_class"] = to_string(rep.cls);
            if (rep.cls != FreeClass::Other) rec["oracle_exponents"] = {rep.e1, rep.e2};
            if (rep.cls == FreeClass::Free) ++n_free;
            else if (rep.cls == FreeClass::NearlyFree) ++n_nearly;
            else ++n_other;
            if (pred.verdict == Prediction::Verdict::NotApplicable) {
                rec["agree"] = nullptr;
            } else {
                const bool ok = prediction_agrees(pred, rep);
                rec["agree"] = ok;
                ++(ok ? agree_cnt : disagree);
            }
            ++records;
            buf << rec.dump() << "\n";
        }
    }
    json summary{{"summary",
                  {{"records", records},
                   {"skipped", skipped},
                   {"free", n_free},
                   {"nearly_free", n_nearly},
                   {"other", n_other},
                   {"agree", agree_cnt},
                   {"disagree", disagree}}}};
    buf << summary.dump() << "\n";
    if (out.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        os << buf.str();
    }
    (void)pretty;
    return disagree == 0 ? 0 : kExitInvariant;
}

std::array<std::uint64_t, 3> normalize_point(std::array<std::uint64_t, 3> c, const PrimeField& f) {
    for (int i = 0; i < 3; ++i)
        if (c[i] != 0) {
            const std::uint64_t inv = f.inv(c[i]);
            for (auto& x : c) x = f.mul(x, inv);
            break;
        }
    return c;
}

int run_repro(int family_k, int primes, const std::string& out, bool pretty) {
    json rep;
    json checks = json::array();
    bool all_ok = true;
    std::string first_fail;
    auto check = [&](const std::string& name, bool ok, const json& detail = json()) {
        checks.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        if (!ok && all_ok) { all_ok = false; first_fail = name; }
    };
    ClassifyOptions opt;
    opt.primes = primes;

    if (family_k <= 0) {
        const auto [a0, a1] = section6_pair();
        const auto t0 = t_vector(a0), t1 = t_vector(a1);
        check("equal t-vectors", t0.t == t1.t, {{"t2", t0.t_at(2)}, {"t3", t0.t_at(3)}, {"t6", t0.t_at(6)}});
        check("t-vector values", t0.t_at(2) == 24 && t0.t_at(3) == 12 && t0.t_at(6) == 3);
        check("c2 both 49", c2(a0) == 49 && c2(a1) == 49);

        const auto r0 = classify(a0, opt);
        check("pair member 0 free (7,7)",
              r0.cls == FreeClass::Free && r0.e1 == 7 && r0.e2 == 7 && r0.certificate_degrees.has_value());
        const PrimeField f0 = find_field(a0.n, opt.prime_floor);
        const auto secs0 = log_sections(a0, f0, 7);
        bool empty_locus = false;
        if (!secs0.empty()) {
            const auto bl = section_base_locus(a0, f0, secs0.front());
            empty_locus = bl.finite && bl.points.empty();
        }
        check("member 0 minimal section has empty base locus", empty_locus);

        const auto r1 = classify(a1, opt);
        bool jp_ok = false;
        if (r1.jumping_point) {
            const PrimeField f1 = find_field(a1.n, opt.prime_floor);
            const auto c = normalize_point(r1.jumping_point->coords, f1);
            jp_ok = c == std::array<std::uint64_t, 3>{1, 1, 1};
        }
        check("pair member 1 nearly free, mdr 6, jumping point (1:1:1)",
              r1.cls == FreeClass::NearlyFree && r1.mdr_value == 6 && jp_ok);

        check("lattices not isomorphic", !same_combinatorics(a0, a1));

        const PrimeField f1 = find_field(a1.n, opt.prime_floor);
        check("cubics through T: 1 vs 0",
              curves_through_T(a1, f1, 3) == 1 && curves_through_T(a0, f0, 3) == 0);

        auto partition = [&](const RUA& a, int fam) {
            auto v = triples_per_line(a)[fam];
            std::sort(v.begin(), v.end());
            return v;
        };
        const std::vector<int> flat{3, 3, 3, 3}, bumped{2, 3, 3, 4};
        int flat0 = 0, bumped0 = 0;
        for (int fam = 0; fam < 3; ++fam) {
            if (partition(a0, fam) == flat) ++flat0;
            if (partition(a0, fam) == bumped) ++bumped0;
        }
        bool part1_flat = true;
        for (int fam = 0; fam < 3; ++fam)
            if (partition(a1, fam) != flat) part1_flat = false;
        check("triple partitions {2,3,4,3} vs {3,3,3,3}", flat0 == 2 && bumped0 == 1 && part1_flat);

        rep["pair"] = {{"free", to_json(a0)}, {"nearly_free", to_json(a1)}};
        rep["reports"] = {{"free", to_json(r0)}, {"nearly_free", to_json(r1)}};
    } else {
        const auto [fm, nf] = nearly_free_family(family_k);
        const auto rf = classify(fm, opt);
        const auto rn = classify(nf, opt);
        check("free member exponents (3k+1,3k+1)",
              rf.cls == FreeClass::Free && rf.e1 == 3 * family_k + 1 && rf.e2 == 3 * family_k + 1);
        check("nearly free member, mdr 3k",
              rn.cls == FreeClass::NearlyFree && rn.mdr_value == 3 * family_k);
        check("both members have 3k^2 inner triples",
              static_cast<int>(inner_triples(fm).triples.size()) == 3 * family_k * family_k &&
                  static_cast<int>(inner_triples(nf).triples.size()) == 3 * family_k * family_k);
        check("equal t-vectors", t_vector(fm).t == t_vector(nf).t);
        rep["pair"] = {{"free", to_json(fm)}, {"nearly_free", to_json(nf)}};
        rep["reports"] = {{"free", to_json(rf)}, {"nearly_free", to_json(rn)}};
    }

    rep["assertions"] = checks;
    rep["ok"] = all_ok;
    emit(rep, out, pretty);
    if (!all_ok) {
        std::cerr << "assertion failed: " << first_fail << "\n";
        return kExitInvariant;
    }
    return 0;
}

int run_certify(const std::string& input, int e1, int e2, std::uint64_t prime, std::uint64_t seed,
                const std::string& out, bool pretty) {
    const RUA a = rua_from_json(load_json(input));
    const int L = static_cast<int>(a.line_count());
    PrimeField f = find_field(a.n, prime == 0 ? 1u << 20 : prime);
    if (prime != 0 && f.p != prime)
        throw std::invalid_argument("--prime must be a prime = 1 mod the arrangement modulus");

    auto fail = [&](const std::string& why) {
        emit(json{{"certificate", nullptr}, {"reason", why}}, out, pretty);
        return kExitNoCertificate;
    };
    if (e1 + e2 != L - 1)
        return fail("degrees must sum to one less than the line count");
    const auto s1 = log_sections(a, f, e1);
    const auto s2 = e1 == e2 ? s1 : log_sections(a, f, e2);
    if (s1.empty() || s2.empty()) return fail("no sections at the requested degrees");

    const HomForm3 eq = concrete_equation(a, f);
    auto verified = [&](const Derivation& t1, const Derivation& t2)
        -> std::optional<SaitoCertificate> {
        const HomForm3 det = saito_determinant(t1, t2, f);
        if (det.is_zero()) return std::nullopt;
        std::size_t lead = 0;
        while (eq.c[lead] == 0) ++lead;
        const std::uint64_t s = f.mul(det.c[lead], f.inv(eq.c[lead]));
        if (sub(det, scale(eq, s, f), f).is_zero()) return SaitoCertificate{t1, t2, s};
        throw InvariantViolation("nonzero Saito determinant is not a multiple of the equation");
    };

    std::optional<SaitoCertificate> cert;
    for (std::size_t i = 0; i < s1.size() && !cert; ++i)
        for (std::size_t j = 0; j < s2.size() && !cert; ++j) cert = verified(s1[i], s2[j]);
    std::mt19937_64 rng(seed);
    auto combine = [&](const std::vector<Derivation>& basis, int k) {
        Derivation d(k);
        for (const auto& b : basis) {
            const std::uint64_t c = rng() % f.p;
            d.px = add(d.px, scale(b.px, c, f), f);
            d.qy = add(d.qy, scale(b.qy, c, f), f);
            d.rz = add(d.rz, scale(b.rz, c, f), f);
        }
        return d;
    };
    for (int att = 0; att < 64 && !cert; ++att) cert = verified(combine(s1, e1), combine(s2, e2));
    if (!cert) return fail("all section pairs have vanishing determinant");

    json doc{{"prime", f.p},
             {"degrees", {e1, e2}},
             {"scalar", cert->scalar},
             {"theta1", {{"px", cert->theta1.px.c}, {"qy", cert->theta1.qy.c}, {"rz", cert->theta1.rz.c}}},
             {"theta2", {{"px", cert->theta2.px.c}, {"qy", cert->theta2.qy.c}, {"rz", cert->theta2.rz.c}}},
             {"monomial_order", "graded lex x > y > z"}};
    emit(doc, out, pretty);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"triangular line arrangement toolkit"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::string in_path, out_path;
    int primes = 2;

    auto* analyze = app.add_subcommand("analyze", "full report for an arrangement file");
    analyze->add_option("input", in_path)->required();
    analyze->add_option("--primes", primes);
    analyze->add_option("--out", out_path);

    std::uint64_t seed = default_seed();
    auto* realize = app.add_subcommand("realize", "realize a combinatorics file as an arrangement");
    realize->add_option("input", in_path)->required();
    realize->add_option("--seed", seed);
    realize->add_option("--out", out_path);

    int n_full = 0;
    auto* complement = app.add_subcommand("complement", "complement inside the full monomial arrangement");
    complement->add_option("input", in_path)->required();
    complement->add_option("--N", n_full)->required();
    complement->add_option("--out", out_path);

    std::string sides_mode = "all";
    int enum_n = 0;
    auto* enumerate = app.add_subcommand("enumerate", "exhaustive sub-arrangement corpus");
    enumerate->add_option("--N", enum_n)->required();
    enumerate->add_option("--sides", sides_mode)->check(CLI::IsMember({"all", "subsets"}));
    enumerate->add_option("--primes", primes);
    enumerate->add_option("--out", out_path);

    int family_k = 0;
    auto* repro = app.add_subcommand("repro-section6", "rebuild and verify the free / nearly free pair");
    repro->add_option("--family", family_k, "use the general family at parameter k instead");
    repro->add_option("--primes", primes);
    repro->add_option("--out", out_path);

    int ce1 = 0, ce2 = 0;
    std::uint64_t cert_prime = 0;
    auto* certify = app.add_subcommand("certify", "Saito certificate at requested degrees");
    certify->add_option("input", in_path)->required();
    certify->add_option("--exponents", [&](const std::vector<std::string>& v) {
        ce1 = std::stoi(v.at(0));
        ce2 = std::stoi(v.at(1));
        return true;
    }, "e1 e2")->expected(2)->required();
    certify->add_option("--prime", cert_prime);
    certify->add_option("--seed", seed);
    certify->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(in_path, primes, out_path, pretty);
        if (realize->parsed()) return run_realize(in_path, seed, out_path, pretty);
        if (complement->parsed()) return run_complement(in_path, n_full, out_path, pretty);
        if (enumerate->parsed()) return run_enumerate(enum_n, sides_mode, primes, out_path, pretty);
        if (repro->parsed()) return run_repro(family_k, primes, out_path, pretty);
        if (certify->parsed()) return run_certify(in_path, ce1, ce2, cert_prime, seed, out_path, pretty);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const triarr_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const json::exception& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
