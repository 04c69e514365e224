#pragma once

#include <optional>
#include <random>
#include <vector>

#include "triarr/combinatorics.hpp"
#include "triarr/linalg.hpp"
#include "triarr/rua.hpp"

namespace triarr {

/// Polynomial vector field theta = P dx + Q dy + R dz, all components of one
/// degree, tangent to every line of the arrangement it was computed for.
struct Derivation {
    int degree = 0;
    HomForm3 px, qy, rz;

    explicit Derivation(int k) : degree(k), px(k), qy(k), rz(k) {}
};

inline Derivation euler_derivation() {
    Derivation e(1);
    e.px = linear_form(1, 0, 0);
    e.qy = linear_form(0, 1, 0);
    e.rz = linear_form(0, 0, 1);
    return e;
}

namespace detail {

/// Restrictions of all degree-k monomials to a parametrized line.
inline std::vector<BinForm> monomial_restrictions(int k, const std::array<BinForm, 3>& subst,
                                                  const PrimeField& f) {
    std::array<std::vector<BinForm>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        pw[v].resize(k + 1);
        pw[v][0] = BinForm(0);
        pw[v][0].c[0] = 1;
        for (int e = 1; e <= k; ++e) pw[v][e] = mul(pw[v][e - 1], subst[v], f);
    }
    const auto exps = mono_exponents3(k);
    std::vector<BinForm> out(exps.size());
    for (std::size_t m = 0; m < exps.size(); ++m)
        out[m] = mul(mul(pw[0][exps[m][0]], pw[1][exps[m][1]], f), pw[2][exps[m][2]], f);
    return out;
}

} // namespace detail

/// Linear system expressing tangency of a degree-k vector field to every
/// line: unknowns are the 3*binom(k+2,2) component coefficients (P block,
/// then Q, then R); per line, the restriction of v.theta contributes k+1
/// coefficient equations.
inline FpMatrix tangency_matrix(const RUA& a, const PrimeField& f, int k) {
    if (static_cast<int>(f.n) != a.n) throw ModulusMismatch("field root order != arrangement modulus");
    const auto lines = a.lines();
    const std::size_t mc = mono_count3(k);
    FpMatrix m(lines.size() * (k + 1), 3 * mc);
    std::size_t row0 = 0;
    for (const Line& l : lines) {
        const auto v = line_covector(l, f);
        const auto rest = detail::monomial_restrictions(k, line_parametrization(v, f), f);
        for (int comp = 0; comp < 3; ++comp) {
            if (v[comp] == 0) continue;
            for (std::size_t mi = 0; mi < mc; ++mi) {
                const std::size_t col = comp * mc + mi;
                for (int d = 0; d <= k; ++d)
                    m.at(row0 + d, col) = f.add(m.at(row0 + d, col), f.mul(v[comp], rest[mi].c[d]));
            }
        }
        row0 += k + 1;
    }
    return m;
}

inline int derivation_dim(const RUA& a, const PrimeField& f, int k) {
    if (k < 0) return 0;
    FpMatrix m = tangency_matrix(a, f, k);
    const std::size_t cols = m.cols;
    return static_cast<int>(cols - rank_fp_inplace(m, f));
}

/// Sections of the log bundle twisted by k: tangent fields modulo Euler
/// multiples.
inline int h0_log(const RUA& a, const PrimeField& f, int k) {
    return derivation_dim(a, f, k) - static_cast<int>(binom2(k + 1));
}

struct GradedDimProfile {
    std::vector<int> dim; // index k
    std::vector<int> h0;
};

inline GradedDimProfile graded_profile(const RUA& a, const PrimeField& f, int k_max) {
    GradedDimProfile g;
    for (int k = 0; k <= k_max; ++k) {
        g.dim.push_back(derivation_dim(a, f, k));
        g.h0.push_back(g.dim.back() - static_cast<int>(binom2(k + 1)));
    }
    return g;
}

/// Minimal degree of a relation: smallest k >= 1 with a non-Euler tangent
/// field.  Always <= N_lines - 1.
inline int mdr(const RUA& a, const PrimeField& f) {
    const int k_cap = static_cast<int>(a.line_count()) - 1;
    for (int k = 1; k <= k_cap; ++k)
        if (h0_log(a, f, k) > 0) return k;
    throw InvariantViolation("no relation found up to N_lines - 1");
}

inline Derivation derivation_from_vector(int k, const std::vector<std::uint64_t>& v) {
    Derivation d(k);
    const std::size_t mc = mono_count3(k);
    for (std::size_t i = 0; i < mc; ++i) {
        d.px.c[i] = v[i];
        d.qy.c[i] = v[mc + i];
        d.rz.c[i] = v[2 * mc + i];
    }
    return d;
}

/// Tangency invariant: v.theta restricts to zero on every line.
inline bool is_tangent(const RUA& a, const PrimeField& f, const Derivation& th) {
    for (const Line& l : a.lines()) {
        const auto v = line_covector(l, f);
        HomForm3 combo = add(add(scale(th.px, v[0], f), scale(th.qy, v[1], f), f),
                             scale(th.rz, v[2], f), f);
        if (!restrict_to_line(combo, v, f).is_zero()) return false;
    }
    return true;
}

namespace detail {

/// Incremental F_p row reducer; insert() reduces a vector against the stored
/// echelon rows and returns the reduced remainder (empty optional if it
/// vanished, i.e. the vector was dependent).
struct RowReducer {
    const PrimeField& f;
    std::vector<std::vector<std::uint64_t>> rows; // echelon, leading 1
    std::vector<std::size_t> lead;

    explicit RowReducer(const PrimeField& fld) : f(fld) {}

    std::optional<std::vector<std::uint64_t>> insert(std::vector<std::uint64_t> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::uint64_t x = v[lead[r]];
            if (x == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = f.sub(v[j], f.mul(x, rows[r][j]));
        }
        std::size_t l = 0;
        while (l < v.size() && v[l] == 0) ++l;
        if (l == v.size()) return std::nullopt;
        const std::uint64_t inv = f.inv(v[l]);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.mul(v[j], inv);
        rows.push_back(v);
        lead.push_back(l);
        return v;
    }
};

/// Coefficient vectors of h*(x, y, z) for all degree-(k-1) monomials h: the
/// Euler-multiple subspace inside the degree-k component space.
inline std::vector<std::vector<std::uint64_t>> euler_multiple_vectors(int k) {
    std::vector<std::vector<std::uint64_t>> out;
    if (k < 1) return out;
    const std::size_t mc = mono_count3(k);
    for (const auto& e : mono_exponents3(k - 1)) {
        std::vector<std::uint64_t> v(3 * mc, 0);
        v[mono_index3(k, e[0] + 1, e[1])] = 1;          // h*x in P
        v[mc + mono_index3(k, e[0], e[1] + 1)] = 1;     // h*y in Q
        v[2 * mc + mono_index3(k, e[0], e[1])] = 1;     // h*z in R
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// Representatives of a basis of degree-k tangent fields modulo Euler
/// multiples, each reduced against the Euler subspace (deterministic).
inline std::vector<Derivation> log_sections(const RUA& a, const PrimeField& f, int k) {
    detail::RowReducer red(f);
    for (auto& v : detail::euler_multiple_vectors(k)) red.insert(std::move(v));
    std::vector<Derivation> out;
    for (auto& v : kernel_fp(tangency_matrix(a, f, k), f))
        if (auto rep = red.insert(std::move(v))) {
            Derivation d = derivation_from_vector(k, *rep);
            if (!is_tangent(a, f, d)) throw InvariantViolation("kernel vector not tangent");
            out.push_back(std::move(d));
        }
    return out;
}

inline HomForm3 saito_determinant(const Derivation& t1, const Derivation& t2,
                                  const PrimeField& f) {
    // det of rows (x,y,z), (P1,Q1,R1), (P2,Q2,R2)
    const HomForm3 m1 = sub(mul(t1.qy, t2.rz, f), mul(t1.rz, t2.qy, f), f);
    const HomForm3 m2 = sub(mul(t1.px, t2.rz, f), mul(t1.rz, t2.px, f), f);
    const HomForm3 m3 = sub(mul(t1.px, t2.qy, f), mul(t1.qy, t2.px, f), f);
    HomForm3 det = sub(mul(linear_form(1, 0, 0), m1, f), mul(linear_form(0, 1, 0), m2, f), f);
    return add(det, mul(linear_form(0, 0, 1), m3, f), f);
}

struct SaitoCertificate {
    Derivation theta1, theta2;
    std::uint64_t scalar = 0; // det(theta_E, theta1, theta2) = scalar * f
};

/// Saito's criterion at degrees (e1, N_lines-1-e1) with e1 = mdr: searches
/// pairs of section representatives, then seeded random combinations.  A
/// nonzero determinant certifies freeness; it is then asserted to equal a
/// scalar multiple of the defining equation.
inline std::optional<SaitoCertificate> saito_certificate(const RUA& a, const PrimeField& f,
                                                         std::uint64_t seed = 0) {
    const int L = static_cast<int>(a.line_count());
    const int e1 = mdr(a, f);
    const int e2 = L - 1 - e1;
    if (e2 < e1) return std::nullopt;

    const auto s1 = log_sections(a, f, e1);
    const auto s2 = e2 == e1 ? s1 : log_sections(a, f, e2);
    if (s1.empty() || s2.empty()) return std::nullopt;

    const HomForm3 eq = concrete_equation(a, f);
    auto check = [&](const Derivation& t1, const Derivation& t2)
        -> std::optional<SaitoCertificate> {
        const HomForm3 det = saito_determinant(t1, t2, f);
        if (det.is_zero()) return std::nullopt;
        // det is automatically divisible by the defining equation; equal
        // degrees force proportionality
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < eq.c.size(); ++i)
            if (eq.c[i] != 0) { s = f.mul(det.c[i], f.inv(eq.c[i])); break; }
        if (s == 0) throw InvariantViolation("nonzero Saito determinant not proportional to f");
        for (std::size_t i = 0; i < eq.c.size(); ++i)
            if (det.c[i] != f.mul(s, eq.c[i]))
                throw InvariantViolation("Saito determinant not proportional to f");
        return SaitoCertificate{t1, t2, s};
    };

    for (std::size_t i = 0; i < s1.size(); ++i)
        for (std::size_t j = 0; j < s2.size(); ++j) {
            if (e1 == e2 && i >= j) continue;
            if (auto c = check(s1[i], s2[j])) return c;
        }
    if (e1 != e2 && s1.size() == 1 && s2.size() == 1) return std::nullopt;

    std::mt19937_64 rng(seed);
    auto combine = [&](const std::vector<Derivation>& basis) {
        Derivation out(basis.front().degree);
        for (const auto& b : basis) {
            const std::uint64_t c = rng() % f.p;
            out.px = add(out.px, scale(b.px, c, f), f);
            out.qy = add(out.qy, scale(b.qy, c, f), f);
            out.rz = add(out.rz, scale(b.rz, c, f), f);
        }
        return out;
    };
    for (int attempt = 0; attempt < 32; ++attempt)
        if (auto c = check(combine(s1), combine(s2))) return c;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Base locus of a section
// ---------------------------------------------------------------------------

struct JumpingPoint {
    std::array<std::uint64_t, 3> coords{0, 0, 0};
    friend bool operator==(const JumpingPoint&, const JumpingPoint&) = default;
};

struct BaseLocus {
    bool finite = false;
    std::vector<JumpingPoint> points;
};

namespace detail {

/// View of a trivariate form as a polynomial in z with binary-form (x, y)
/// coefficients; zc[l] has degree D - l.
inline std::vector<BinForm> z_coefficients(const HomForm3& g) {
    const int d = g.degree;
    std::vector<BinForm> zc(d + 1);
    for (int l = 0; l <= d; ++l) {
        zc[l] = BinForm(d - l);
        for (int j = 0; j <= d - l; ++j) zc[l].c[j] = g.c[mono_index3(d, d - l - j, j)];
    }
    return zc;
}

inline int z_degree(const std::vector<BinForm>& zc) {
    for (int l = static_cast<int>(zc.size()) - 1; l >= 0; --l)
        if (!zc[l].is_zero()) return l;
    return -1;
}

/// Univariate restriction g(x0, y0, z) as coefficients in z, low to high.
inline std::vector<std::uint64_t> restrict_xy(const std::vector<BinForm>& zc, std::uint64_t x0,
                                              std::uint64_t y0, const PrimeField& f) {
    std::vector<std::uint64_t> out(zc.size(), 0);
    for (std::size_t l = 0; l < zc.size(); ++l) {
        // zc[l](x0, y0) by Horner in y0/x0-free form
        std::uint64_t acc = 0;
        const int d = zc[l].degree;
        for (int j = 0; j <= d; ++j)
            acc = f.add(acc, f.mul(zc[l].c[j], f.mul(f.pow(x0, d - j), f.pow(y0, j))));
        out[l] = acc;
    }
    return out;
}

inline std::uint64_t eval_univ(const std::vector<std::uint64_t>& c, std::uint64_t t,
                               const PrimeField& f) {
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, t), c[i]);
    return acc;
}

/// Numeric Sylvester resultant in z of two restricted polynomials with the
/// given formal z-degrees.
inline std::uint64_t sylvester_det(const std::vector<std::uint64_t>& p1, int d1,
                                   const std::vector<std::uint64_t>& p2, int d2,
                                   const PrimeField& f) {
    const int n = d1 + d2;
    FpMatrix m(n, n);
    for (int r = 0; r < d2; ++r)
        for (int c = 0; c <= d1; ++c) m.at(r, r + c) = p1[d1 - c];
    for (int r = 0; r < d1; ++r)
        for (int c = 0; c <= d2; ++c) m.at(d2 + r, r + c) = p2[d2 - c];
    // determinant by elimination
    std::uint64_t det = 1;
    for (int col = 0, row = 0; col < n && row < n; ++col) {
        int sel = row;
        while (sel < n && m.at(sel, col) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != row) {
            for (int j = col; j < n; ++j) std::swap(m.a[sel * n + j], m.a[row * n + j]);
            det = f.neg(det);
        }
        det = f.mul(det, m.at(row, col));
        const std::uint64_t inv = f.inv(m.at(row, col));
        for (int i = row + 1; i < n; ++i) {
            const std::uint64_t x = f.mul(m.at(i, col), inv);
            if (x == 0) continue;
            for (int j = col; j < n; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(x, m.at(row, j)));
        }
        ++row;
    }
    return det;
}

/// 2x2 minors of the matrix with rows theta_E, theta (the cross product
/// theta_E x theta).  Their common zeros are where theta is radial.
inline std::array<HomForm3, 3> wedge_minors(const Derivation& th, const PrimeField& f) {
    const HomForm3 x = linear_form(1, 0, 0), y = linear_form(0, 1, 0), z = linear_form(0, 0, 1);
    return {
        sub(mul(y, th.rz, f), mul(z, th.qy, f), f), // y R - z Q
        sub(mul(z, th.px, f), mul(x, th.rz, f), f), // z P - x R
        sub(mul(x, th.qy, f), mul(y, th.px, f), f), // x Q - y P
    };
}

/// The wedge minors with their forced line factors removed.  A tangent field
/// is radial at every multiple point, so the x-minor y R - z Q vanishes
/// identically on every arrangement line through (1:0:0), and likewise for
/// the other two minors and vertices.  Stripping those factors makes z
/// elimination on the minor system possible.
inline std::array<HomForm3, 3> reduced_minors(const RUA& a, const PrimeField& f,
                                              const Derivation& th) {
    std::array<HomForm3, 3> minors = wedge_minors(th, f);
    auto strip = [&](HomForm3& m, std::initializer_list<Family> through) {
        if (m.is_zero()) return;
        for (const Line& l : a.lines())
            for (Family fam : through)
                if (l.family == fam) m = divide_linear(m, line_covector(l, f), f);
    };
    strip(minors[0], {Family::B, Family::SideY, Family::SideZ});
    strip(minors[1], {Family::C, Family::SideX, Family::SideZ});
    strip(minors[2], {Family::A, Family::SideX, Family::SideY});
    return minors;
}

} // namespace detail

/// Whether theta, as a section of the rank-2 log bundle, vanishes at q.
/// Off the arrangement the bundle fiber is C^3 / span(q), so vanishing is
/// just the radiality of theta(q).  At a point on m >= 1 lines the local
/// module is free on the radial field E_q and the field G_q = (h_v, -h_u)
/// built from the product h of the line forms through q; theta vanishes
/// exactly when both coordinates of theta in this basis vanish at q.  The
/// G_q coordinate is (q0 m0 + q1 m1 + q2 m2) / h up to a nonzero scalar,
/// and the E_q coordinate is (1/m) sum over lines of (theta(l)/l)(q) minus
/// the radial eigenvalue of theta at q.
inline bool section_vanishes_at(const RUA& a, const PrimeField& f, const Derivation& th,
                                const std::array<HomForm3, 3>& minors,
                                std::array<std::uint64_t, 3> q) {
    for (const auto& m : minors)
        if (evaluate(m, q, f) != 0) return false; // theta(q) not radial

    std::vector<std::array<std::uint64_t, 3>> thru;
    for (const Line& l : a.lines()) {
        const auto cv = line_covector(l, f);
        const std::uint64_t v =
            f.add(f.add(f.mul(cv[0], q[0]), f.mul(cv[1], q[1])), f.mul(cv[2], q[2]));
        if (v == 0) thru.push_back(cv);
    }
    if (thru.empty()) return true;

    HomForm3 w = add(add(scale(minors[0], q[0], f), scale(minors[1], q[1], f), f),
                     scale(minors[2], q[2], f), f);
    if (!w.is_zero()) {
        for (const auto& cv : thru) w = divide_linear(w, cv, f);
        if (evaluate(w, q, f) != 0) return false;
    }

    int i0 = 0;
    while (q[i0] == 0) ++i0;
    const std::array<const HomForm3*, 3> comp{&th.px, &th.qy, &th.rz};
    const std::uint64_t lambda = f.mul(evaluate(*comp[i0], q, f), f.inv(q[i0]));
    std::uint64_t sum = 0;
    for (const auto& cv : thru) {
        HomForm3 tl = add(add(scale(th.px, cv[0], f), scale(th.qy, cv[1], f), f),
                          scale(th.rz, cv[2], f), f);
        sum = f.add(sum, evaluate(divide_linear(tl, cv, f), q, f));
    }
    const std::uint64_t avg = f.mul(sum, f.inv(thru.size() % f.p));
    return avg == lambda;
}

/// Zero locus of the section theta defines in the log bundle.  Candidate
/// points come from z elimination on the reduced minor system (or a full
/// P^2(F_p) scan for small fields); each candidate is then confirmed with
/// the local vanishing test, which weeds out points where theta is merely
/// radial.
inline BaseLocus section_base_locus(const RUA& a, const PrimeField& f, const Derivation& th) {
    const PrimeField& fl = f;
    const std::array<HomForm3, 3> orig = detail::wedge_minors(th, fl);
    bool orig_zero = true;
    for (const auto& m : orig)
        if (!m.is_zero()) orig_zero = false;
    if (orig_zero) return {false, {}}; // theta is a multiple of the Euler field

    BaseLocus out;
    auto at_point = [&](std::uint64_t px, std::uint64_t py, std::uint64_t pz) {
        return section_vanishes_at(a, fl, th, orig, {px, py, pz});
    };

    if (fl.p < 10000) { // brute scan of P^2
        out.finite = true;
        for (std::uint64_t py = 0; py < fl.p; ++py)
            for (std::uint64_t pz = 0; pz < fl.p; ++pz)
                if (at_point(1, py, pz)) out.points.push_back({{1, py, pz}});
        for (std::uint64_t pz = 0; pz < fl.p; ++pz)
            if (at_point(0, 1, pz)) out.points.push_back({{0, 1, pz}});
        if (at_point(0, 0, 1)) out.points.push_back({{0, 0, 1}});
        return out;
    }

    const std::array<HomForm3, 3> minors = detail::reduced_minors(a, fl, th);
    std::vector<const HomForm3*> nz;
    for (const auto& m : minors)
        if (!m.is_zero()) nz.push_back(&m);
    for (const auto* m : nz)
        if (m->degree == 0) return {true, {}}; // a unit: the locus is empty
    if (nz.size() < 2) return {false, {}};     // locus contains a curve (or everything)

    std::array<std::vector<BinForm>, 3> zc{detail::z_coefficients(minors[0]),
                                           detail::z_coefficients(minors[1]),
                                           detail::z_coefficients(minors[2])};
    std::vector<std::uint64_t> res_coeffs; // univariate in t, low to high
    bool have_candidates = false;

    // a z-free reduced form pins the candidate (x : y) values by itself
    for (int i = 0; i < 3 && !have_candidates; ++i) {
        if (minors[i].is_zero() || detail::z_degree(zc[i]) != 0) continue;
        const BinForm& b = zc[i][0]; // c[j] multiplies x^(d-j) y^j
        res_coeffs.assign(b.c.rbegin(), b.c.rend());
        have_candidates = true;
    }

    // otherwise eliminate z from a pair with positive z-degrees and a nonzero
    // resultant
    for (int i = 0; i < 3 && !have_candidates; ++i)
        for (int j = i + 1; j < 3 && !have_candidates; ++j) {
            const int d1 = detail::z_degree(zc[i]), d2 = detail::z_degree(zc[j]);
            if (d1 < 1 || d2 < 1) continue;
            const int dg1 = minors[i].degree, dg2 = minors[j].degree;
            const int dh = d2 * dg1 + d1 * dg2 - d1 * d2; // resultant degree in (x, y)
            // interpolate the resultant at (t, 1) through dh + 1 samples
            std::vector<std::uint64_t> ts, vals;
            bool nonzero = false;
            for (int s = 0; s <= dh; ++s) {
                const std::uint64_t t = static_cast<std::uint64_t>(s);
                const auto p1 = detail::restrict_xy(zc[i], t, 1, fl);
                const auto p2 = detail::restrict_xy(zc[j], t, 1, fl);
                const std::uint64_t v = detail::sylvester_det(p1, d1, p2, d2, fl);
                ts.push_back(t);
                vals.push_back(v);
                if (v != 0) nonzero = true;
            }
            if (!nonzero) continue; // common factor; try another pair
            // Lagrange interpolation to coefficients
            std::vector<std::uint64_t> poly(dh + 1, 0);
            for (int s = 0; s <= dh; ++s) {
                std::vector<std::uint64_t> basis{1}; // product of (t - ts[u]) for u != s
                std::uint64_t denom = 1;
                for (int u = 0; u <= dh; ++u) {
                    if (u == s) continue;
                    basis.push_back(0);
                    for (std::size_t q = basis.size() - 1; q > 0; --q)
                        basis[q] = fl.sub(basis[q - 1], fl.mul(basis[q], ts[u]));
                    basis[0] = fl.mul(basis[0], fl.neg(ts[u]));
                    denom = fl.mul(denom, fl.sub(ts[s], ts[u]));
                }
                const std::uint64_t w = fl.mul(vals[s], fl.inv(denom));
                for (int q = 0; q <= dh; ++q) poly[q] = fl.add(poly[q], fl.mul(w, basis[q]));
            }
            res_coeffs = std::move(poly);
            have_candidates = true;
        }
    if (!have_candidates) return {false, {}};

    // roots on the affine chart y = 1 plus the point (1 : 0)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> xy_roots;
    for (std::uint64_t t = 0; t < fl.p; ++t)
        if (detail::eval_univ(res_coeffs, t, fl) == 0) xy_roots.push_back({t, 1});
    if (res_coeffs.back() == 0) xy_roots.push_back({1, 0}); // root at infinity
    out.finite = true;
    for (auto [x0, y0] : xy_roots) {
        std::array<std::vector<std::uint64_t>, 3> rs{detail::restrict_xy(zc[0], x0, y0, fl),
                                                     detail::restrict_xy(zc[1], x0, y0, fl),
                                                     detail::restrict_xy(zc[2], x0, y0, fl)};
        bool all_zero = true;
        for (const auto& r : rs)
            for (auto c : r)
                if (c) { all_zero = false; break; }
        if (all_zero) { out.finite = false; continue; } // whole fiber line in the locus
        for (std::uint64_t zv = 0; zv < fl.p; ++zv) {
            bool ok = true;
            for (const auto& r : rs)
                if (detail::eval_univ(r, zv, fl) != 0) { ok = false; break; }
            if (ok && at_point(x0, y0, zv)) out.points.push_back({{x0, y0, zv}});
        }
    }
    if (at_point(0, 0, 1)) out.points.push_back({{0, 0, 1}});
    return out;
}

/// Reduced (smooth zero-dimensional) at the point: the Jacobian of the three
/// reduced minor forms has rank >= 2 there.
inline bool base_point_reduced(const RUA& a, const Derivation& th, const JumpingPoint& pt,
                               const PrimeField& f) {
    const std::array<HomForm3, 3> minors = detail::reduced_minors(a, f, th);
    FpMatrix jac(3, 3);
    for (int i = 0; i < 3; ++i) {
        if (minors[i].degree == 0) continue;
        const auto g = gradient(minors[i], f);
        for (int j = 0; j < 3; ++j) jac.at(i, j) = evaluate(g[j], pt.coords, f);
    }
    return rank_fp_inplace(jac, f) >= 2;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class FreeClass { Free, NearlyFree, Other };

inline const char* to_string(FreeClass c) {
    switch (c) {
        case FreeClass::Free: return "free";
        case FreeClass::NearlyFree: return "nearly_free";
        case FreeClass::Other: return "other";
    }
    return "?";
}

struct PrimeVerdict {
    std::uint64_t p = 0;
    FreeClass cls = FreeClass::Other;
    int e1 = 0, e2 = 0;
    int mdr_value = 0;
    std::optional<JumpingPoint> jumping_point;
    bool has_certificate = false;
    bool agree = true; // with the first prime's verdict
};

struct FreenessReport {
    FreeClass cls = FreeClass::Other;
    int e1 = 0, e2 = 0; // exponents (free) or splitting (nearly free)
    int mdr_value = 0;
    long long c2_value = 0;
    std::optional<JumpingPoint> jumping_point; // over the first prime
    std::optional<std::pair<int, int>> certificate_degrees;
    std::vector<PrimeVerdict> primes;
    bool all_agree = true;
};

struct ClassifyOptions {
    int primes = 2;
    std::uint64_t prime_floor = 1u << 20; // i-th field searched from i * prime_floor
    bool check_h0_model = true;
    std::uint64_t seed = 0;
};

inline FreenessReport classify(const RUA& a, const ClassifyOptions& opt) {
    if (opt.primes < 1) throw std::invalid_argument("classify: primes >= 1 required");
    FreenessReport rep;
    rep.c2_value = c2(a);
    const int L = static_cast<int>(a.line_count());

    for (int i = 1; i <= opt.primes; ++i) {
        const PrimeField f = find_field(a.n, opt.prime_floor * static_cast<std::uint64_t>(i));
        PrimeVerdict v;
        v.p = f.p;
        v.mdr_value = mdr(a, f);
        const int e1 = v.mdr_value;
        const long long prod = static_cast<long long>(e1) * (L - 1 - e1);
        if (prod == rep.c2_value) {
            if (auto cert = saito_certificate(a, f, opt.seed)) {
                v.cls = FreeClass::Free;
                v.e1 = e1;
                v.e2 = L - 1 - e1;
                v.has_certificate = true;
                if (opt.check_h0_model) {
                    for (int k = 0; k <= v.e1 + v.e2; ++k) {
                        const int expect = static_cast<int>(binom2(k - v.e1 + 2)) +
                                           static_cast<int>(binom2(k - v.e2 + 2));
                        if (h0_log(a, f, k) != expect)
                            throw InvariantViolation("free h0 profile deviates from two-generator model");
                    }
                }
            }
        } else if (prod == rep.c2_value - 1) {
            const auto secs = log_sections(a, f, e1);
            if (!secs.empty()) {
                const auto locus = section_base_locus(a, f, secs.front());
                if (locus.finite && locus.points.size() == 1 &&
                    base_point_reduced(a, secs.front(), locus.points.front(), f)) {
                    v.cls = FreeClass::NearlyFree;
                    v.e1 = e1;
                    v.e2 = L - e1;
                    v.jumping_point = locus.points.front();
                }
            }
        }

        if (i == 1) {
            rep.cls = v.cls;
            rep.e1 = v.e1;
            rep.e2 = v.e2;
            rep.mdr_value = v.mdr_value;
            rep.jumping_point = v.jumping_point;
            if (v.cls == FreeClass::Free) rep.certificate_degrees = {v.e1, v.e2};
        } else {
            v.agree = v.cls == rep.cls && v.e1 == rep.e1 && v.e2 == rep.e2 &&
                      v.mdr_value == rep.mdr_value;
            if (!v.agree) rep.all_agree = false;
        }
        rep.primes.push_back(std::move(v));
    }
    return rep;
}

inline FreenessReport classify(const RUA& a, int primes = 2) {
    ClassifyOptions opt;
    opt.primes = primes;
    return classify(a, opt);
}

// ---------------------------------------------------------------------------
// Ziegler restriction to a line
// ---------------------------------------------------------------------------

namespace detail {

inline std::array<std::uint64_t, 3> cross(const std::array<std::uint64_t, 3>& u,
                                          const std::array<std::uint64_t, 3>& v,
                                          const PrimeField& f) {
    return {f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
            f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
            f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]))};
}

/// Coordinates of a singular point as the intersection of its first two
/// lines.
inline std::array<std::uint64_t, 3> realize_point(const SingularPoint& p, const PrimeField& f) {
    const auto u = line_covector(p.lines.at(0), f);
    const auto v = line_covector(p.lines.at(1), f);
    const auto w = cross(u, v, f);
    if (w[0] == 0 && w[1] == 0 && w[2] == 0)
        throw InvariantViolation("coincident lines in singular point");
    return w;
}

} // namespace detail

/// Exponents of the Ziegler restriction of A to one of its lines: the rank-2
/// multiarrangement with multiplicity m_p - 1 at each singular point p on the
/// line.  d1 + d2 = N_lines - 1.
inline std::pair<int, int> ziegler_exponents(const RUA& a, const PrimeField& f, const Line& line) {
    {
        const auto ls = a.lines();
        if (std::find(ls.begin(), ls.end(), line) == ls.end())
            throw LineNotPresent("ziegler_exponents: line not in arrangement");
    }
    const auto cov = line_covector(line, f);
    // the two non-pivot coordinates, in increasing index order, carry the
    // parameters (s, t) of line_parametrization directly
    int i1 = -1, i2 = -1;
    {
        int pivot = -1;
        for (int i = 2; i >= 0; --i)
            if (cov[i] != 0) { pivot = i; break; }
        for (int i = 0; i < 3; ++i) {
            if (i == pivot) continue;
            (i1 < 0 ? i1 : i2) = i;
        }
    }

    // multiplicity and (s, t) coordinates per singular point on the line
    std::vector<std::pair<std::array<std::uint64_t, 2>, int>> pts; // (point, mu)
    for (const auto& p : singular_points(a)) {
        if (std::find(p.lines.begin(), p.lines.end(), line) == p.lines.end()) continue;
        const int mu = p.multiplicity() - 1;
        if (mu <= 0) continue;
        std::array<std::uint64_t, 3> q{};
        // intersect the chosen line with any other line of the point
        for (const auto& l2 : p.lines)
            if (!(l2 == line)) {
                q = detail::cross(cov, line_covector(l2, f), f);
                break;
            }
        pts.push_back({{q[i1], q[i2]}, mu});
    }

    int total = 0;
    for (const auto& [q, mu] : pts) total += mu;
    if (total != static_cast<int>(a.line_count()) - 1)
        throw InvariantViolation("Ziegler multiplicities do not sum to N_lines - 1");

    // graded kernel of: for each point with L_p = t_p s - s_p t, L_p^mu
    // divides t_p f - s_p g, where (f, g) are binary forms of degree k
    auto dim_at = [&](int k) {
        std::vector<std::vector<std::uint64_t>> rows;
        for (const auto& [q, mu] : pts) {
            const std::uint64_t sp = q[0], tp = q[1];
            // h = tp * f - sp * g has coefficients h_i = tp f_i - sp g_i over
            // the basis s^(k-i) t^i; unknowns [f_0..f_k, g_0..g_k]
            if (tp != 0) {
                // dehomogenize at t = 1, root at s = alpha = sp / tp
                const std::uint64_t alpha = f.mul(sp, f.inv(tp));
                // derivative conditions d^j/ds^j h(s, 1) at alpha, j < mu
                for (int j = 0; j < mu; ++j) {
                    std::vector<std::uint64_t> row(2 * (k + 1), 0);
                    for (int i = 0; i <= k; ++i) {
                        const int sd = k - i; // s-degree of term i
                        if (sd < j) continue;
                        // falling factorial sd (sd-1) ... (sd-j+1) * alpha^(sd-j)
                        std::uint64_t cf = 1;
                        for (int u = 0; u < j; ++u)
                            cf = f.mul(cf, static_cast<std::uint64_t>(sd - u) % f.p);
                        cf = f.mul(cf, f.pow(alpha, sd - j));
                        row[i] = f.mul(tp, cf);
                        row[k + 1 + i] = f.neg(f.mul(sp, cf));
                    }
                    rows.push_back(std::move(row));
                }
            } else {
                // point (1 : 0), L_p = t, h = -sp g: t^mu | h means the mu
                // lowest t-coefficients of g vanish
                for (int j = 0; j < mu && j <= k; ++j) {
                    std::vector<std::uint64_t> row(2 * (k + 1), 0);
                    row[k + 1 + j] = f.neg(sp);
                    rows.push_back(std::move(row));
                }
            }
        }
        FpMatrix m(rows.size(), 2 * (k + 1));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
        return static_cast<int>(m.cols - rank_fp_inplace(m, f));
    };

    for (int k = 0; k <= total; ++k)
        if (dim_at(k) > 0) return {k, total - k};
    throw InvariantViolation("Ziegler exponents not found");
}

/// Dimension of degree-d curves through all inner triple points (realized
/// over F).
inline int curves_through_T(const RUA& a, const PrimeField& f, int d) {
    if (static_cast<int>(f.n) != a.n) throw ModulusMismatch("field root order != arrangement modulus");
    const auto t = inner_triples(a);
    const std::size_t mc = mono_count3(d);
    FpMatrix m(t.size(), mc);
    const auto exps = mono_exponents3(d);
    for (std::size_t r = 0; r < t.size(); ++r) {
        const auto& tr = t.triples[r];
        // A_i and B_j meet at (zeta^(alpha+beta) : zeta^beta : 1)
        const std::array<std::uint64_t, 3> pt{
            f.zeta_pow(static_cast<long long>(a.ea[tr[0]]) + a.eb[tr[1]]),
            f.zeta_pow(a.eb[tr[1]]), 1};
        for (std::size_t c = 0; c < mc; ++c)
            m.at(r, c) = f.mul(f.pow(pt[0], exps[c][0]),
                               f.mul(f.pow(pt[1], exps[c][1]), f.pow(pt[2], exps[c][2])));
    }
    return static_cast<int>(mc - rank_fp_inplace(m, f));
}

} // namespace triarr
