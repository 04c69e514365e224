#pragma once

#include <numeric>
#include <random>
#include <string>

#include "triarr/combinatorics.hpp"
#include "triarr/freeness.hpp"
#include "triarr/intlattice.hpp"

namespace triarr {

struct ForcedRelation {
    enum class Kind { TripleForced, LinesCoincide };
    Kind kind;
    int family = -1;        // 0/1/2 for LinesCoincide
    std::array<int, 3> idx; // (i,j,k) of the forced triple, or (i1,i2,-) of the pair

    std::string describe() const {
        if (kind == Kind::TripleForced)
            return "triple (" + std::to_string(idx[0] + 1) + "," + std::to_string(idx[1] + 1) +
                   "," + std::to_string(idx[2] + 1) + ") holds in every solution";
        const char* fam = family == 0 ? "A" : family == 1 ? "B" : "C";
        return std::string("lines ") + std::to_string(idx[0] + 1) + " and " +
               std::to_string(idx[1] + 1) + " of family " + fam + " coincide in every solution";
    }
};

struct RealizationProblem {
    AbstractCombinatorics target;
    int modulus_cap = 512;   // largest root-of-unity order tried
    int attempts_per_modulus = 128;
    std::uint64_t seed = 0;
};

struct RealizationResult {
    enum class Outcome { Realized, Forced };
    Outcome outcome = Outcome::Forced;
    std::optional<RUA> rua;
    std::vector<ForcedRelation> forced;
    int attempts = 0;
    int modulus = 0;
};

namespace detail {

/// A linear form that must be nonzero (mod the chosen root order) on a valid
/// exponent vector: a non-triple sum or a within-family difference.
struct ForbiddenForm {
    std::vector<std::pair<int, long long>> terms; // (variable index, coefficient)
    ForcedRelation relation;

    BigInt eval(const std::vector<BigInt>& x) const {
        BigInt v = 0;
        for (auto [i, c] : terms) v += c * x[i];
        return v;
    }
};

struct ExponentSystem {
    int na, nb, nc;       // inner-line counts per family
    IntMatrix equalities; // one row per triple: v_i + w_j + t_k = 0
    std::vector<ForbiddenForm> forbidden;

    int var_a(int i) const { return i; }
    int var_b(int j) const { return na + j; }
    int var_c(int k) const { return na + nb + k; }
    int dim() const { return na + nb + nc; }
};

inline ExponentSystem build_system(const AbstractCombinatorics& t) {
    validate_combinatorics(t);
    ExponentSystem s;
    s.na = t.a - 1;
    s.nb = t.b - 1;
    s.nc = t.c - 1;

    s.equalities = IntMatrix(t.triples.size(), s.dim());
    std::set<std::array<int, 3>> in_s(t.triples.begin(), t.triples.end());
    for (std::size_t r = 0; r < t.triples.size(); ++r) {
        const auto& tr = t.triples[r];
        s.equalities.at(r, s.var_a(tr[0])) = 1;
        s.equalities.at(r, s.var_b(tr[1])) = 1;
        s.equalities.at(r, s.var_c(tr[2])) = 1;
    }
    for (int i = 0; i < s.na; ++i)
        for (int j = 0; j < s.nb; ++j)
            for (int k = 0; k < s.nc; ++k) {
                if (in_s.count({i, j, k})) continue;
                ForbiddenForm f;
                f.terms = {{s.var_a(i), 1}, {s.var_b(j), 1}, {s.var_c(k), 1}};
                f.relation = {ForcedRelation::Kind::TripleForced, -1, {i, j, k}};
                s.forbidden.push_back(std::move(f));
            }
    auto add_distinct = [&](int fam, int count, auto var) {
        for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j) {
                ForbiddenForm f;
                f.terms = {{var(i), 1}, {var(j), -1}};
                f.relation = {ForcedRelation::Kind::LinesCoincide, fam, {i, j, -1}};
                s.forbidden.push_back(std::move(f));
            }
    };
    add_distinct(0, s.na, [&](int i) { return s.var_a(i); });
    add_distinct(1, s.nb, [&](int j) { return s.var_b(j); });
    add_distinct(2, s.nc, [&](int k) { return s.var_c(k); });
    return s;
}

/// Solutions of (equalities = 0 mod n) as a sublattice of Z^dim: the
/// projection onto the x-block of the integer kernel of [A | n*I].
inline IntMatrix congruence_lattice(const IntMatrix& a, int n) {
    IntMatrix ext(a.rows, a.cols + a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) ext.at(i, j) = a.at(i, j);
        ext.at(i, a.cols + i) = n;
    }
    const IntMatrix k = integer_kernel(ext);
    IntMatrix basis(a.cols, k.cols);
    for (std::size_t j = 0; j < k.cols; ++j)
        for (std::size_t i = 0; i < a.cols; ++i) basis.at(i, j) = k.at(i, j);
    return basis;
}

/// Sorted-order permutation of a family's sampled exponents: sorted_pos[i] is
/// where original inner line i lands after exponent normalization.
inline std::vector<int> sort_positions(const std::vector<int>& exps) {
    std::vector<int> order(exps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return exps[x] < exps[y]; });
    std::vector<int> pos(exps.size());
    for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = static_cast<int>(r);
    return pos;
}

/// The target combinatorics after relabeling each family by the sampled
/// exponents' sorted order (a family-preserving isomorphism).
inline AbstractCombinatorics permuted_target(const AbstractCombinatorics& t,
                                             const std::vector<int>& pa,
                                             const std::vector<int>& pb,
                                             const std::vector<int>& pc) {
    AbstractCombinatorics out = t;
    for (auto& tr : out.triples) tr = {pa[tr[0]], pb[tr[1]], pc[tr[2]]};
    std::sort(out.triples.begin(), out.triples.end());
    return out;
}

} // namespace detail

/// Forbidden forms that are integer combinations of the triple equalities and
/// hence vanish modulo every root order on every solution.  Nonempty means no
/// triangular arrangement with distinct lines has this combinatorics.
/// (Rational combinations with denominators are not obstructions: they only
/// pin the forbidden value to a torsion class, which a suitable modulus
/// keeps away from zero.)
inline std::vector<ForcedRelation> forced_relations(const AbstractCombinatorics& target) {
    const auto sys = detail::build_system(target);
    // row lattice of the equality matrix, as columns
    IntMatrix rows_t(sys.dim(), sys.equalities.rows);
    for (std::size_t i = 0; i < sys.equalities.rows; ++i)
        for (std::size_t j = 0; j < sys.equalities.cols; ++j)
            rows_t.at(j, i) = sys.equalities.at(i, j);
    std::vector<ForcedRelation> out;
    for (const auto& f : sys.forbidden) {
        std::vector<BigInt> phi(sys.dim(), 0);
        for (auto [i, c] : f.terms) phi[i] = c;
        if (lattice_contains(rows_t, phi)) out.push_back(f.relation);
    }
    return out;
}

inline RealizationResult realize_as_rua(const RealizationProblem& prob) {
    const auto& target = prob.target;
    const auto sys = detail::build_system(target);

    RealizationResult res;
    res.forced = forced_relations(target);
    if (!res.forced.empty()) {
        res.outcome = RealizationResult::Outcome::Forced;
        return res;
    }

    // sanity: (v, w, t) = (-1, 2, -1) solves the exact equality system
    {
        std::vector<BigInt> probe(sys.dim());
        for (int i = 0; i < sys.na; ++i) probe[sys.var_a(i)] = -1;
        for (int j = 0; j < sys.nb; ++j) probe[sys.var_b(j)] = 2;
        for (int k = 0; k < sys.nc; ++k) probe[sys.var_c(k)] = -1;
        for (const BigInt& v : mat_vec(sys.equalities, probe))
            if (v != 0) throw InvariantViolation("canonical solution fails the equality system");
    }

    std::mt19937_64 rng(prob.seed);
    auto try_vector = [&](const std::vector<BigInt>& x, int n) -> std::optional<RUA> {
        for (const auto& f : sys.forbidden)
            if (f.eval(x) % n == 0) return std::nullopt;
        std::vector<int> ea(sys.na), eb(sys.nb), ec(sys.nc);
        auto red = [&](const BigInt& v) {
            BigInt m = v % n;
            if (m < 0) m += n;
            return static_cast<int>(m);
        };
        for (int i = 0; i < sys.na; ++i) ea[i] = red(x[sys.var_a(i)]);
        for (int j = 0; j < sys.nb; ++j) eb[j] = red(x[sys.var_b(j)]);
        for (int k = 0; k < sys.nc; ++k) ec[k] = red(x[sys.var_c(k)]);
        const auto expect = detail::permuted_target(target, detail::sort_positions(ea),
                                                    detail::sort_positions(eb),
                                                    detail::sort_positions(ec));
        RUA rua;
        try {
            rua = make_rua(n, ea, eb, ec, target.sides);
        } catch (const triarr_error&) {
            return std::nullopt; // e.g. degenerate pencil
        }
        if (extract_combinatorics(rua) != expect) return std::nullopt;
        return rua;
    };

    for (int n = 1; n <= prob.modulus_cap; ++n) {
        const IntMatrix basis = detail::congruence_lattice(sys.equalities, n);
        // a forbidden form vanishing mod n on the whole lattice rules n out
        bool usable = true;
        for (const auto& f : sys.forbidden) {
            bool all_zero = true;
            for (std::size_t col = 0; col < basis.cols && all_zero; ++col) {
                BigInt v = 0;
                for (auto [i, c] : f.terms) v += c * basis.at(i, col);
                if (v % n != 0) all_zero = false;
            }
            if (all_zero) { usable = false; break; }
        }
        if (!usable && !(sys.forbidden.empty())) continue;

        std::uniform_int_distribution<long long> dist(0, n - 1);
        for (int att = 0; att < prob.attempts_per_modulus; ++att) {
            ++res.attempts;
            std::vector<BigInt> x(sys.dim(), 0);
            for (std::size_t col = 0; col < basis.cols; ++col) {
                const long long c = dist(rng);
                if (c == 0) continue;
                for (int i = 0; i < sys.dim(); ++i) x[i] += c * basis.at(i, col);
            }
            if (auto rua = try_vector(x, n)) {
                res.outcome = RealizationResult::Outcome::Realized;
                res.rua = std::move(*rua);
                res.modulus = n;
                return res;
            }
        }
    }
    throw SamplingExhausted("no realization found up to the modulus cap");
}

struct TeraoPair {
    FreenessReport original;
    FreenessReport realized;
    RUA realized_rua;
    bool lattice_match = false;
    bool class_match = false;
};

/// Terao-evidence harness: realize the combinatorics of A afresh and compare
/// oracle classifications.
inline TeraoPair terao_pair(const RUA& a, int primes = 2, std::uint64_t seed = 0) {
    RealizationProblem prob;
    prob.target = extract_combinatorics(a);
    prob.seed = seed;
    const auto res = realize_as_rua(prob);
    if (res.outcome != RealizationResult::Outcome::Realized)
        throw ConstructionFailed("combinatorics of an actual arrangement reported as forced");
    TeraoPair out{classify(a, primes), classify(*res.rua, primes), *res.rua, false, false};
    out.lattice_match = same_combinatorics(a, *res.rua);
    out.class_match = out.original.cls == out.realized.cls &&
                      out.original.e1 == out.realized.e1 && out.original.e2 == out.realized.e2;
    return out;
}

} // namespace triarr
