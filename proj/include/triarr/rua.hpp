#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "triarr/forms.hpp"

namespace triarr {

struct triarr_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateExponent : triarr_error { using triarr_error::triarr_error; };
struct EmptyArrangement : triarr_error { using triarr_error::triarr_error; };
struct LineNotPresent : triarr_error { using triarr_error::triarr_error; };
struct NotEmbeddable : triarr_error { using triarr_error::triarr_error; };
struct ModulusMismatch : triarr_error { using triarr_error::triarr_error; };
struct InvalidSignature : triarr_error { using triarr_error::triarr_error; };
struct SamplingExhausted : triarr_error { using triarr_error::triarr_error; };
struct ConstructionFailed : triarr_error { using triarr_error::triarr_error; };
struct InvariantViolation : triarr_error { using triarr_error::triarr_error; };

/// The three side lines: X is x=0, Y is y=0, Z is z=0.
enum class Side { X, Y, Z };

/// Inner families: FamA is x = zeta^a y (through P1 = (0:0:1)),
/// FamB is y = zeta^b z (through P2 = (1:0:0)),
/// FamC is z = zeta^c x (through P3 = (0:1:0)).
enum class Family { A, B, C, SideX, SideY, SideZ };

struct Line {
    Family family;
    int exponent = -1; // residue mod n for inner families, -1 for sides

    bool is_side() const { return family == Family::SideX || family == Family::SideY || family == Family::SideZ; }
    friend bool operator==(const Line&, const Line&) = default;
    friend auto operator<=>(const Line&, const Line&) = default;
};

struct TrSignature {
    int a = 1, b = 1, c = 1;
    std::set<Side> sides;
    friend bool operator==(const TrSignature&, const TrSignature&) = default;
};

/// Roots-of-Unity triangular arrangement: modulus n, strictly sorted exponent
/// lists per inner family, plus the subset of present sides.
struct RUA {
    int n = 1;
    std::vector<int> ea, eb, ec;
    std::set<Side> sides;

    std::size_t line_count() const { return ea.size() + eb.size() + ec.size() + sides.size(); }
    bool has_side(Side s) const { return sides.count(s) != 0; }

    std::vector<Line> lines() const {
        std::vector<Line> out;
        for (int e : ea) out.push_back({Family::A, e});
        for (int e : eb) out.push_back({Family::B, e});
        for (int e : ec) out.push_back({Family::C, e});
        if (has_side(Side::X)) out.push_back({Family::SideX, -1});
        if (has_side(Side::Y)) out.push_back({Family::SideY, -1});
        if (has_side(Side::Z)) out.push_back({Family::SideZ, -1});
        return out;
    }

    friend bool operator==(const RUA&, const RUA&) = default;
};

namespace detail {

inline std::vector<int> normalize_exponents(std::vector<int> v, int n, const char* fam) {
    for (auto& e : v) {
        e %= n;
        if (e < 0) e += n;
    }
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw DuplicateExponent(std::string("duplicate exponent in family ") + fam);
    return v;
}

inline int mod(long long x, int n) {
    int r = static_cast<int>(x % n);
    return r < 0 ? r + n : r;
}

inline bool contains(const std::vector<int>& v, int e) {
    return std::binary_search(v.begin(), v.end(), e);
}

/// Does the arrangement have all its lines through one point?
inline bool all_concurrent(const RUA& a) {
    // Lines through a vertex: P1 holds family A + sides X, Y;
    // P2 holds family B + sides Y, Z; P3 holds family C + sides X, Z.
    const bool x = a.has_side(Side::X), y = a.has_side(Side::Y), z = a.has_side(Side::Z);
    if (a.eb.empty() && a.ec.empty() && !z) return true; // all through P1
    if (a.ea.empty() && a.ec.empty() && !x) return true; // all through P2
    if (a.ea.empty() && a.eb.empty() && !y) return true; // all through P3
    // Inner pencil: one line per family, no sides, exponents summing to 0.
    if (a.sides.empty() && a.ea.size() == 1 && a.eb.size() == 1 && a.ec.size() == 1 &&
        mod(static_cast<long long>(a.ea[0]) + a.eb[0] + a.ec[0], a.n) == 0)
        return true;
    return false;
}

} // namespace detail

inline RUA make_rua(int n, std::vector<int> ea, std::vector<int> eb, std::vector<int> ec,
                    std::set<Side> sides) {
    if (n < 1) throw InvalidSignature("modulus must be positive");
    RUA a;
    a.n = n;
    a.ea = detail::normalize_exponents(std::move(ea), n, "A");
    a.eb = detail::normalize_exponents(std::move(eb), n, "B");
    a.ec = detail::normalize_exponents(std::move(ec), n, "C");
    a.sides = std::move(sides);
    if (a.line_count() < 3) throw EmptyArrangement("fewer than 3 lines");
    if (detail::all_concurrent(a)) throw EmptyArrangement("degenerate pencil");
    return a;
}

/// The full monomial arrangement of 3N+3 lines: xyz(x^N-y^N)(y^N-z^N)(x^N-z^N).
inline RUA full_monomial(int N) {
    if (N < 1) throw InvalidSignature("full_monomial: N must be positive");
    std::vector<int> all(N);
    for (int i = 0; i < N; ++i) all[i] = i;
    return make_rua(N, all, all, all, {Side::X, Side::Y, Side::Z});
}

inline RUA delete_lines(const RUA& a, const std::vector<Line>& lines) {
    RUA b = a;
    for (const Line& l : lines) {
        auto erase_from = [&](std::vector<int>& v) {
            auto it = std::find(v.begin(), v.end(), l.exponent);
            if (it == v.end()) throw LineNotPresent("inner line not present");
            v.erase(it);
        };
        switch (l.family) {
            case Family::A: erase_from(b.ea); break;
            case Family::B: erase_from(b.eb); break;
            case Family::C: erase_from(b.ec); break;
            case Family::SideX:
                if (!b.sides.erase(Side::X)) throw LineNotPresent("side X not present");
                break;
            case Family::SideY:
                if (!b.sides.erase(Side::Y)) throw LineNotPresent("side Y not present");
                break;
            case Family::SideZ:
                if (!b.sides.erase(Side::Z)) throw LineNotPresent("side Z not present");
                break;
        }
    }
    if (b.line_count() < 3) throw EmptyArrangement("fewer than 3 lines after deletion");
    if (detail::all_concurrent(b)) throw EmptyArrangement("degenerate pencil after deletion");
    return b;
}

/// The inner lines of full_monomial(N) that are missing from A (exponents
/// rescaled by N/n).  Sides are not part of the complement.
inline std::vector<Line> complement_in(const RUA& a, int N) {
    if (N % a.n != 0) throw NotEmbeddable("modulus of A does not divide N");
    const int scale = N / a.n;
    auto family_complement = [&](const std::vector<int>& e, Family fam) {
        std::vector<char> present(N, 0);
        for (int x : e) present[static_cast<std::size_t>(x) * scale] = 1;
        std::vector<Line> out;
        for (int x = 0; x < N; ++x)
            if (!present[x]) out.push_back({fam, x});
        return out;
    };
    std::vector<Line> out = family_complement(a.ea, Family::A);
    auto vb = family_complement(a.eb, Family::B);
    auto vc = family_complement(a.ec, Family::C);
    out.insert(out.end(), vb.begin(), vb.end());
    out.insert(out.end(), vc.begin(), vc.end());
    return out;
}

/// A copy of A with exponents rescaled to modulus N (n | N required).
inline RUA rescale_to(const RUA& a, int N) {
    if (N % a.n != 0) throw NotEmbeddable("modulus of A does not divide N");
    const int s = N / a.n;
    RUA b = a;
    b.n = N;
    for (auto& e : b.ea) e *= s;
    for (auto& e : b.eb) e *= s;
    for (auto& e : b.ec) e *= s;
    return b;
}

/// Normal covector of a line over F (F.n must equal A.n for inner lines).
inline std::array<std::uint64_t, 3> line_covector(const Line& l, const PrimeField& f) {
    switch (l.family) {
        case Family::SideX: return {1, 0, 0};
        case Family::SideY: return {0, 1, 0};
        case Family::SideZ: return {0, 0, 1};
        case Family::A: return {1, f.neg(f.zeta_pow(l.exponent)), 0}; // x - z^a y
        case Family::B: return {0, 1, f.neg(f.zeta_pow(l.exponent))}; // y - z^b z
        case Family::C: return {f.neg(f.zeta_pow(l.exponent)), 0, 1}; // z - z^c x
    }
    throw std::logic_error("unreachable");
}

/// Product of all line forms of A over F; degree = line count.
inline HomForm3 concrete_equation(const RUA& a, const PrimeField& f) {
    if (static_cast<int>(f.n) != a.n) throw ModulusMismatch("field root order != arrangement modulus");
    HomForm3 prod(0);
    prod.c[0] = 1;
    for (const Line& l : a.lines()) {
        const auto v = line_covector(l, f);
        prod = mul(prod, linear_form(v[0], v[1], v[2]), f);
    }
    return prod;
}

inline TrSignature tr_signature(const RUA& a) {
    TrSignature s;
    s.a = static_cast<int>(a.ea.size()) + 1;
    s.b = static_cast<int>(a.eb.size()) + 1;
    s.c = static_cast<int>(a.ec.size()) + 1;
    s.sides = a.sides;
    return s;
}

} // namespace triarr
