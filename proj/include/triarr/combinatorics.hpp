#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "triarr/rua.hpp"

namespace triarr {

inline long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Index triples (i, j, k) into (ea, eb, ec) with ea[i]+eb[j]+ec[k] = 0 (mod n).
struct TripleSet {
    std::vector<std::array<int, 3>> triples;
    std::size_t size() const { return triples.size(); }
};

inline TripleSet inner_triples(const RUA& a) {
    TripleSet t;
    for (std::size_t i = 0; i < a.ea.size(); ++i)
        for (std::size_t j = 0; j < a.eb.size(); ++j) {
            const int g = detail::mod(-static_cast<long long>(a.ea[i]) - a.eb[j], a.n);
            const auto it = std::lower_bound(a.ec.begin(), a.ec.end(), g);
            if (it != a.ec.end() && *it == g)
                t.triples.push_back({static_cast<int>(i), static_cast<int>(j),
                                     static_cast<int>(it - a.ec.begin())});
        }
    return t;
}

enum class PointKind { Vertex, OnSide, Inner };

struct SingularPoint {
    PointKind kind;
    std::vector<Line> lines;
    int multiplicity() const { return static_cast<int>(lines.size()); }
};

/// Every pairwise intersection grouped into distinct projective points.
/// Equality of points is decided purely by exponent arithmetic mod n.
inline std::vector<SingularPoint> singular_points(const RUA& a) {
    std::vector<SingularPoint> pts;

    // Vertices: P1 = (0:0:1) carries family A and sides X, Y; P2 = (1:0:0)
    // carries family B and sides Y, Z; P3 = (0:1:0) carries family C and X, Z.
    {
        SingularPoint p1{PointKind::Vertex, {}};
        for (int e : a.ea) p1.lines.push_back({Family::A, e});
        if (a.has_side(Side::X)) p1.lines.push_back({Family::SideX, -1});
        if (a.has_side(Side::Y)) p1.lines.push_back({Family::SideY, -1});
        if (p1.multiplicity() >= 2) pts.push_back(std::move(p1));

        SingularPoint p2{PointKind::Vertex, {}};
        for (int e : a.eb) p2.lines.push_back({Family::B, e});
        if (a.has_side(Side::Y)) p2.lines.push_back({Family::SideY, -1});
        if (a.has_side(Side::Z)) p2.lines.push_back({Family::SideZ, -1});
        if (p2.multiplicity() >= 2) pts.push_back(std::move(p2));

        SingularPoint p3{PointKind::Vertex, {}};
        for (int e : a.ec) p3.lines.push_back({Family::C, e});
        if (a.has_side(Side::X)) p3.lines.push_back({Family::SideX, -1});
        if (a.has_side(Side::Z)) p3.lines.push_back({Family::SideZ, -1});
        if (p3.multiplicity() >= 2) pts.push_back(std::move(p3));
    }

    // On-side double points: side Z meets family A at (zeta^a : 1 : 0), side X
    // meets family B at (0 : zeta^b : 1), side Y meets family C at (1 : 0 : zeta^c).
    if (a.has_side(Side::Z))
        for (int e : a.ea)
            pts.push_back({PointKind::OnSide, {{Family::A, e}, {Family::SideZ, -1}}});
    if (a.has_side(Side::X))
        for (int e : a.eb)
            pts.push_back({PointKind::OnSide, {{Family::B, e}, {Family::SideX, -1}}});
    if (a.has_side(Side::Y))
        for (int e : a.ec)
            pts.push_back({PointKind::OnSide, {{Family::C, e}, {Family::SideY, -1}}});

    // Inner points.  A point off the vertices carries at most one line per
    // family; a pair from two families is completed to a triple iff the third
    // exponent (sum = 0 mod n) is present.
    const int n = a.n;
    auto has = [&](const std::vector<int>& v, int e) { return detail::contains(v, e); };
    for (int ia : a.ea)
        for (int ib : a.eb) {
            const int g = detail::mod(-static_cast<long long>(ia) - ib, n);
            if (has(a.ec, g))
                pts.push_back({PointKind::Inner,
                               {{Family::A, ia}, {Family::B, ib}, {Family::C, g}}});
            else
                pts.push_back({PointKind::Inner, {{Family::A, ia}, {Family::B, ib}}});
        }
    for (int ia : a.ea)
        for (int ic : a.ec) {
            const int g = detail::mod(-static_cast<long long>(ia) - ic, n);
            if (!has(a.eb, g)) // else already counted as a triple above
                pts.push_back({PointKind::Inner, {{Family::A, ia}, {Family::C, ic}}});
        }
    for (int ib : a.eb)
        for (int ic : a.ec) {
            const int g = detail::mod(-static_cast<long long>(ib) - ic, n);
            if (!has(a.ea, g))
                pts.push_back({PointKind::Inner, {{Family::B, ib}, {Family::C, ic}}});
        }

    // Pair-count identity: sum of binom(m_p, 2) = binom(#lines, 2).
    long long pairs = 0;
    for (const auto& p : pts) pairs += binom2(p.multiplicity());
    if (pairs != binom2(static_cast<long long>(a.line_count())))
        throw InvariantViolation("pair-count identity failed in singular_points");
    return pts;
}

/// The vector t_m of counts of points of multiplicity m.
struct WeakCombinatorics {
    long long n_lines = 0;
    std::map<int, long long> t;

    long long t_at(int m) const {
        auto it = t.find(m);
        return it == t.end() ? 0 : it->second;
    }
    friend bool operator==(const WeakCombinatorics&, const WeakCombinatorics&) = default;
};

inline WeakCombinatorics t_vector(const RUA& a) {
    WeakCombinatorics w;
    w.n_lines = static_cast<long long>(a.line_count());
    for (const auto& p : singular_points(a)) ++w.t[p.multiplicity()];
    long long pairs = 0;
    for (auto [m, cnt] : w.t) pairs += cnt * binom2(m);
    if (pairs != binom2(w.n_lines))
        throw InvariantViolation("pair-count identity failed in t_vector");
    return w;
}

/// Second Chern number of the log bundle, via the multiplicity formula
/// binom(L-1, 2) - sum_p binom(m_p - 1, 2).  With all three sides present
/// this equals binom(a+b+c-1,2)-binom(a,2)-binom(b,2)-binom(c,2)-|T|
/// (asserted).
inline long long c2(const RUA& a) {
    const long long L = static_cast<long long>(a.line_count());
    long long v = binom2(L - 1);
    for (const auto& p : singular_points(a)) v -= binom2(p.multiplicity() - 1);
    if (a.sides.size() == 3) {
        const auto s = tr_signature(a);
        const long long alt = binom2(s.a + s.b + s.c - 1) - binom2(s.a) - binom2(s.b) -
                              binom2(s.c) - static_cast<long long>(inner_triples(a).size());
        if (alt != v) throw InvariantViolation("c2 formulas disagree");
    }
    return v;
}

/// Which two families (by index 0=A,1=B,2=C) carry the grid.
struct CiGrid {
    int fam1 = 0, fam2 = 1;
    std::pair<int, int> grid; // (#inner lines of fam1, #inner lines of fam2)
};

/// T is a complete-intersection grid iff for some choice of two families it
/// equals the full product of their inner lines.
inline std::optional<CiGrid> is_ci_grid(const RUA& a) {
    const auto t = inner_triples(a);
    const std::array<std::size_t, 3> sizes{a.ea.size(), a.eb.size(), a.ec.size()};
    for (int f1 = 0; f1 < 3; ++f1)
        for (int f2 = f1 + 1; f2 < 3; ++f2) {
            if (t.size() != sizes[f1] * sizes[f2]) continue;
            if (t.size() == 0) continue;
            // |T| <= product and no two triples share two coordinates, so
            // equality holds iff every pair occurs exactly once.
            std::set<std::pair<int, int>> seen;
            for (const auto& tr : t.triples) seen.insert({tr[f1], tr[f2]});
            if (seen.size() == t.size())
                return CiGrid{f1, f2, {static_cast<int>(sizes[f1]), static_cast<int>(sizes[f2])}};
        }
    return std::nullopt;
}

struct HirzebruchCheck {
    bool applicable = false;
    bool holds = false;
    long long slack = 0;
};

/// t_2 + t_3 >= n + sum_{i>=1} i t_{i+4}, valid when t_n = t_{n-1} = t_{n-2} = 0.
inline HirzebruchCheck hirzebruch_check(const RUA& a) {
    const auto w = t_vector(a);
    const long long n = w.n_lines;
    HirzebruchCheck h;
    h.applicable = w.t_at(static_cast<int>(n)) == 0 && w.t_at(static_cast<int>(n - 1)) == 0 &&
                   w.t_at(static_cast<int>(n - 2)) == 0;
    if (!h.applicable) return h;
    long long rhs = n;
    for (auto [m, cnt] : w.t)
        if (m >= 5) rhs += static_cast<long long>(m - 4) * cnt;
    const long long lhs = w.t_at(2) + w.t_at(3);
    h.slack = lhs - rhs;
    h.holds = h.slack >= 0;
    return h;
}

/// Signature plus the triple incidence set, lines indexed 0-based by sorted
/// exponent position.
struct AbstractCombinatorics {
    int a = 1, b = 1, c = 1; // completed signature: inner lines + 1
    std::set<Side> sides;
    std::vector<std::array<int, 3>> triples;

    friend bool operator==(const AbstractCombinatorics&, const AbstractCombinatorics&) = default;
};

/// Structural validity: index bounds, the (a-1)(b-1) bound under every role
/// permutation, and no two triples sharing two coordinates.
inline void validate_combinatorics(const AbstractCombinatorics& comb) {
    if (comb.a < 1 || comb.b < 1 || comb.c < 1) throw InvalidSignature("signature entries must be >= 1");
    const std::array<long long, 3> in{comb.a - 1, comb.b - 1, comb.c - 1};
    for (const auto& t : comb.triples)
        for (int f = 0; f < 3; ++f)
            if (t[f] < 0 || t[f] >= in[f]) throw InvalidSignature("triple index out of range");
    const long long s = static_cast<long long>(comb.triples.size());
    if (s > in[0] * in[1] || s > in[0] * in[2] || s > in[1] * in[2])
        throw InvalidSignature("too many triples for the signature");
    std::set<std::array<int, 3>> seen(comb.triples.begin(), comb.triples.end());
    if (seen.size() != comb.triples.size()) throw InvalidSignature("duplicate triple");
    // Two triples sharing two coordinates would make a pair of lines meet
    // twice; such inputs are accepted here and diagnosed as forced relations.
}

inline AbstractCombinatorics extract_combinatorics(const RUA& a) {
    AbstractCombinatorics comb;
    const auto s = tr_signature(a);
    comb.a = s.a;
    comb.b = s.b;
    comb.c = s.c;
    comb.sides = a.sides;
    comb.triples = inner_triples(a).triples;
    validate_combinatorics(comb);
    return comb;
}

/// Per family, the number of inner triples on each inner line.
inline std::array<std::vector<int>, 3> triples_per_line(const RUA& a) {
    std::array<std::vector<int>, 3> out{std::vector<int>(a.ea.size(), 0),
                                        std::vector<int>(a.eb.size(), 0),
                                        std::vector<int>(a.ec.size(), 0)};
    for (const auto& t : inner_triples(a).triples)
        for (int f = 0; f < 3; ++f) ++out[f][t[f]];
    return out;
}

struct ComplementStats {
    long long t_rem = 0;
    bool identity_holds = false;
};

/// |T_rem| of the complement of A inside full_monomial(N), and the exact
/// identity |T| = N^2 - (N+2)(a+b+c-3) - 3 + ab+ac+bc - |T_rem|.
inline ComplementStats complement_stats(const RUA& a, int N) {
    if (a.sides.size() != 3) throw NotEmbeddable("complement requires all three sides");
    const auto comp = complement_in(a, N);
    std::vector<int> da, db, dc;
    for (const auto& l : comp) {
        if (l.family == Family::A) da.push_back(l.exponent);
        if (l.family == Family::B) db.push_back(l.exponent);
        if (l.family == Family::C) dc.push_back(l.exponent);
    }
    std::sort(dc.begin(), dc.end());
    long long t_rem = 0;
    for (int x : da)
        for (int y : db)
            if (detail::contains(dc, detail::mod(-static_cast<long long>(x) - y, N))) ++t_rem;

    const auto s = tr_signature(a);
    const long long S = s.a + s.b + s.c;
    const long long prod = static_cast<long long>(s.a) * s.b + static_cast<long long>(s.a) * s.c +
                           static_cast<long long>(s.b) * s.c;
    const long long lhs = static_cast<long long>(inner_triples(rescale_to(a, N)).size());
    const long long rhs = static_cast<long long>(N) * N - static_cast<long long>(N + 2) * (S - 3) -
                          3 + prod - t_rem;
    return {t_rem, lhs == rhs};
}

/// Exact minimum of |T_rem| over all ways of deleting lines from
/// full_monomial(N) down to signature (a, b, c).  For fixed deleted sets in
/// the first two families the optimal third-family choice is the (N+1-c)
/// residues with fewest completions, so only the first two sets are searched.
inline long long min_trem(int N, int a, int b, int c) {
    const int da = N + 1 - a, db = N + 1 - b, dc = N + 1 - c;
    if (da < 0 || db < 0 || dc < 0) throw InvalidSignature("signature exceeds N+1");
    if (da == 0 || db == 0 || dc == 0) return 0;

    long long best = -1;
    // iterate over subsets of Z/N of the given sizes
    auto for_subsets = [&](int size, auto&& fn) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            fn(idx);
            int i = size - 1;
            while (i >= 0 && idx[i] == N - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    };
    for_subsets(da, [&](const std::vector<int>& A) {
        for_subsets(db, [&](const std::vector<int>& B) {
            std::vector<long long> cnt(N, 0);
            for (int x : A)
                for (int y : B) ++cnt[detail::mod(-static_cast<long long>(x) - y, N)];
            std::sort(cnt.begin(), cnt.end());
            long long tot = 0;
            for (int i = 0; i < dc; ++i) tot += cnt[i];
            if (best < 0 || tot < best) best = tot;
        });
    });
    return best;
}

// ---------------------------------------------------------------------------
// Intersection-lattice isomorphism
// ---------------------------------------------------------------------------

namespace detail {

struct LatticeView {
    std::size_t n_lines = 0;
    std::vector<std::vector<int>> point_lines; // per point, sorted line indices
    std::vector<std::vector<int>> pt_of_pair;  // [i][j] -> point id
    std::vector<std::vector<int>> points_on_line;
    std::vector<std::vector<int>> line_profile; // sorted point multiplicities per line

    explicit LatticeView(const RUA& a) {
        const auto ls = a.lines();
        n_lines = ls.size();
        std::map<Line, int> idx;
        for (std::size_t i = 0; i < ls.size(); ++i) idx[ls[i]] = static_cast<int>(i);

        pt_of_pair.assign(n_lines, std::vector<int>(n_lines, -1));
        for (const auto& p : singular_points(a)) {
            std::vector<int> mem;
            for (const auto& l : p.lines) mem.push_back(idx.at(l));
            std::sort(mem.begin(), mem.end());
            const int pid = static_cast<int>(point_lines.size());
            for (std::size_t u = 0; u < mem.size(); ++u)
                for (std::size_t v = u + 1; v < mem.size(); ++v)
                    pt_of_pair[mem[u]][mem[v]] = pt_of_pair[mem[v]][mem[u]] = pid;
            point_lines.push_back(std::move(mem));
        }
        points_on_line.assign(n_lines, {});
        for (std::size_t pid = 0; pid < point_lines.size(); ++pid)
            for (int l : point_lines[pid]) points_on_line[l].push_back(static_cast<int>(pid));
        line_profile.assign(n_lines, {});
        for (std::size_t l = 0; l < n_lines; ++l) {
            for (int pid : points_on_line[l])
                line_profile[l].push_back(static_cast<int>(point_lines[pid].size()));
            std::sort(line_profile[l].begin(), line_profile[l].end());
        }
    }
};

inline bool lattice_backtrack(const LatticeView& va, const LatticeView& vb,
                              std::vector<int>& map_ab, std::vector<char>& used_b,
                              const std::vector<int>& order, std::size_t depth) {
    if (depth == order.size()) return true;
    const int a = order[depth];
    for (std::size_t b = 0; b < vb.n_lines; ++b) {
        if (used_b[b]) continue;
        if (va.line_profile[a] != vb.line_profile[b]) continue;
        bool ok = true;
        // every point through a must map consistently
        for (int pid : va.points_on_line[a]) {
            const auto& mem = va.point_lines[pid];
            int common = -2; // -2: none seen yet
            for (int u : mem) {
                if (u == a || map_ab[u] < 0) continue;
                const int q = vb.pt_of_pair[b][map_ab[u]];
                if (q < 0 || (common != -2 && q != common)) { ok = false; break; }
                common = q;
            }
            if (!ok) break;
            if (common >= 0) {
                if (vb.point_lines[common].size() != mem.size()) { ok = false; break; }
                // the B point must not contain images of lines outside this A point
                for (int w : vb.point_lines[common]) {
                    if (static_cast<std::size_t>(w) == b) continue;
                    // find preimage of w
                    for (std::size_t u = 0; u < map_ab.size(); ++u)
                        if (map_ab[u] == w &&
                            std::find(mem.begin(), mem.end(), static_cast<int>(u)) == mem.end()) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
            }
            if (!ok) break;
        }
        if (!ok) continue;
        map_ab[a] = static_cast<int>(b);
        used_b[b] = 1;
        if (lattice_backtrack(va, vb, map_ab, used_b, order, depth + 1)) return true;
        map_ab[a] = -1;
        used_b[b] = 0;
    }
    return false;
}

} // namespace detail

/// True iff the intersection lattices are isomorphic as posets, i.e. there is
/// a line bijection inducing a point bijection.  Exact backtracking search,
/// feasible for arrangements up to ~30 lines.
inline bool same_combinatorics(const RUA& a, const RUA& b) {
    if (a.line_count() != b.line_count()) return false;
    const auto ta = t_vector(a), tb = t_vector(b);
    if (ta.t != tb.t) return false;

    detail::LatticeView va(a), vb(b);
    // sorted line invariants must agree
    {
        auto pa = va.line_profile, pb = vb.line_profile;
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        if (pa != pb) return false;
    }
    // most-constrained lines first: rarest profile, then largest profile
    std::vector<int> order(va.n_lines);
    for (std::size_t i = 0; i < va.n_lines; ++i) order[i] = static_cast<int>(i);
    std::map<std::vector<int>, int> freq;
    for (const auto& p : va.line_profile) ++freq[p];
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const int fx = freq[va.line_profile[x]], fy = freq[va.line_profile[y]];
        if (fx != fy) return fx < fy;
        return va.line_profile[x] > va.line_profile[y];
    });

    std::vector<int> map_ab(va.n_lines, -1);
    std::vector<char> used_b(vb.n_lines, 0);
    return detail::lattice_backtrack(va, vb, map_ab, used_b, order, 0);
}

} // namespace triarr
