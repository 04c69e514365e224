#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "triarr/fp.hpp"

namespace triarr {

/// Number of monomials of degree k in three variables.
inline std::size_t mono_count3(int k) {
    return static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k + 2) / 2;
}

/// Index of x^i y^j z^l (i+j+l = k) in graded-lexicographic order with
/// x > y > z: x^k first, z^k last.  This order is shared by every module.
inline std::size_t mono_index3(int k, int i, int j) {
    const int m = k - i;         // total degree in y,z
    const int l = k - i - j;     // degree in z
    return static_cast<std::size_t>(m) * (m + 1) / 2 + static_cast<std::size_t>(l);
}

/// Enumerates (i, j, l) in the fixed monomial order.
inline std::vector<std::array<int, 3>> mono_exponents3(int k) {
    std::vector<std::array<int, 3>> out;
    out.reserve(mono_count3(k));
    for (int i = k; i >= 0; --i)
        for (int j = k - i; j >= 0; --j) out.push_back({i, j, k - i - j});
    return out;
}

/// Homogeneous trivariate form of fixed degree over a prime field.
struct HomForm3 {
    int degree = 0;
    std::vector<std::uint64_t> c; // indexed by mono_index3

    HomForm3() : c(1, 0) {}
    explicit HomForm3(int k) : degree(k), c(mono_count3(k), 0) {}

    bool is_zero() const {
        for (auto x : c)
            if (x) return false;
        return true;
    }
};

/// Homogeneous binary form of fixed degree; coefficient i multiplies
/// s^(k-i) t^i.
struct BinForm {
    int degree = 0;
    std::vector<std::uint64_t> c;

    BinForm() : c(1, 0) {}
    explicit BinForm(int k) : degree(k), c(k + 1, 0) {}

    bool is_zero() const {
        for (auto x : c)
            if (x) return false;
        return true;
    }
};

inline BinForm mul(const BinForm& f, const BinForm& g, const PrimeField& fld) {
    BinForm h(f.degree + g.degree);
    for (int i = 0; i <= f.degree; ++i) {
        if (f.c[i] == 0) continue;
        for (int j = 0; j <= g.degree; ++j)
            h.c[i + j] = fld.add(h.c[i + j], fld.mul(f.c[i], g.c[j]));
    }
    return h;
}

inline HomForm3 mul(const HomForm3& f, const HomForm3& g, const PrimeField& fld) {
    HomForm3 h(f.degree + g.degree);
    const auto ef = mono_exponents3(f.degree);
    const auto eg = mono_exponents3(g.degree);
    for (std::size_t a = 0; a < ef.size(); ++a) {
        if (f.c[a] == 0) continue;
        for (std::size_t b = 0; b < eg.size(); ++b) {
            if (g.c[b] == 0) continue;
            const auto idx = mono_index3(h.degree, ef[a][0] + eg[b][0], ef[a][1] + eg[b][1]);
            h.c[idx] = fld.add(h.c[idx], fld.mul(f.c[a], g.c[b]));
        }
    }
    return h;
}

inline HomForm3 add(const HomForm3& f, const HomForm3& g, const PrimeField& fld) {
    assert(f.degree == g.degree);
    HomForm3 h(f.degree);
    for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = fld.add(f.c[i], g.c[i]);
    return h;
}

inline HomForm3 sub(const HomForm3& f, const HomForm3& g, const PrimeField& fld) {
    assert(f.degree == g.degree);
    HomForm3 h(f.degree);
    for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = fld.sub(f.c[i], g.c[i]);
    return h;
}

inline HomForm3 scale(const HomForm3& f, std::uint64_t s, const PrimeField& fld) {
    HomForm3 h(f.degree);
    for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = fld.mul(f.c[i], s);
    return h;
}

/// Linear form c0 x + c1 y + c2 z.
inline HomForm3 linear_form(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2) {
    HomForm3 f(1);
    f.c[mono_index3(1, 1, 0)] = c0;
    f.c[mono_index3(1, 0, 1)] = c1;
    f.c[mono_index3(1, 0, 0)] = c2;
    return f;
}

inline std::array<std::uint64_t, 3> linear_coeffs(const HomForm3& l) {
    assert(l.degree == 1);
    return {l.c[mono_index3(1, 1, 0)], l.c[mono_index3(1, 0, 1)], l.c[mono_index3(1, 0, 0)]};
}

/// Rational parametrization of the projective line {c.x + c.y + c.z = 0}:
/// the variable of largest index with nonzero coefficient is solved for, the
/// remaining two variables become (s, t) in increasing index order.  Returns
/// the three substitution linear binary forms (for x, y, z).
inline std::array<BinForm, 3> line_parametrization(std::array<std::uint64_t, 3> v,
                                                   const PrimeField& fld) {
    int pivot = -1;
    for (int i = 2; i >= 0; --i)
        if (v[i] != 0) { pivot = i; break; }
    if (pivot < 0) throw std::invalid_argument("line form is zero");

    std::array<BinForm, 3> subst{BinForm(1), BinForm(1), BinForm(1)};
    int par = 0; // 0 -> s, 1 -> t
    const std::uint64_t piv_inv = fld.inv(v[pivot]);
    for (int i = 0; i < 3; ++i) {
        if (i == pivot) continue;
        subst[i].c[par] = 1;
        // pivot variable picks up -v[i]/v[pivot] times this parameter
        subst[pivot].c[par] = fld.neg(fld.mul(v[i], piv_inv));
        ++par;
    }
    return subst;
}

/// Substitution of a line parametrization into F; result degree = deg F.
inline BinForm restrict_to_line(const HomForm3& f, std::array<std::uint64_t, 3> line,
                                const PrimeField& fld) {
    const auto subst = line_parametrization(line, fld);
    const int k = f.degree;
    // powers of the three substitution forms up to degree k
    std::array<std::vector<BinForm>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        pw[v].resize(k + 1);
        pw[v][0] = BinForm(0);
        pw[v][0].c[0] = 1;
        for (int e = 1; e <= k; ++e) pw[v][e] = mul(pw[v][e - 1], subst[v], fld);
    }
    BinForm out(k);
    const auto exps = mono_exponents3(k);
    for (std::size_t m = 0; m < exps.size(); ++m) {
        if (f.c[m] == 0) continue;
        BinForm term = mul(mul(pw[0][exps[m][0]], pw[1][exps[m][1]], fld), pw[2][exps[m][2]], fld);
        for (int i = 0; i <= k; ++i)
            out.c[i] = fld.add(out.c[i], fld.mul(f.c[m], term.c[i]));
    }
    return out;
}

/// Evaluate at a projective point.
inline std::uint64_t evaluate(const HomForm3& f, std::array<std::uint64_t, 3> pt,
                              const PrimeField& fld) {
    std::uint64_t acc = 0;
    const auto exps = mono_exponents3(f.degree);
    for (std::size_t m = 0; m < exps.size(); ++m) {
        if (f.c[m] == 0) continue;
        std::uint64_t t = f.c[m];
        t = fld.mul(t, fld.pow(pt[0], exps[m][0]));
        t = fld.mul(t, fld.pow(pt[1], exps[m][1]));
        t = fld.mul(t, fld.pow(pt[2], exps[m][2]));
        acc = fld.add(acc, t);
    }
    return acc;
}

inline std::uint64_t evaluate(const BinForm& f, std::uint64_t s, std::uint64_t t,
                              const PrimeField& fld) {
    std::uint64_t acc = 0;
    for (int i = 0; i <= f.degree; ++i) {
        if (f.c[i] == 0) continue;
        acc = fld.add(acc, fld.mul(f.c[i], fld.mul(fld.pow(s, f.degree - i), fld.pow(t, i))));
    }
    return acc;
}

/// Exact division by a linear form; throws if the division leaves a
/// remainder.
inline HomForm3 divide_linear(const HomForm3& f, std::array<std::uint64_t, 3> l,
                              const PrimeField& fld) {
    int piv = -1;
    for (int i = 0; i < 3; ++i)
        if (l[i] != 0) { piv = i; break; }
    if (piv < 0) throw std::invalid_argument("division by the zero form");
    const int k = f.degree;
    if (k == 0) {
        if (!f.is_zero()) throw std::invalid_argument("form not divisible by linear factor");
        return HomForm3();
    }
    HomForm3 g(k - 1);
    auto gc = [&](std::array<int, 3> e) -> std::uint64_t {
        if (e[0] < 0 || e[1] < 0 || e[2] < 0) return 0;
        return g.c[mono_index3(k - 1, e[0], e[1])];
    };
    auto exps = mono_exponents3(k - 1);
    std::stable_sort(exps.begin(), exps.end(),
                     [&](const auto& a, const auto& b) { return a[piv] > b[piv]; });
    const std::uint64_t inv = fld.inv(l[piv]);
    for (const auto& e : exps) {
        std::array<int, 3> fe = e;
        ++fe[piv];
        std::uint64_t val = f.c[mono_index3(k, fe[0], fe[1])];
        for (int v = 0; v < 3; ++v) {
            if (v == piv || l[v] == 0) continue;
            std::array<int, 3> ge = fe;
            --ge[v];
            val = fld.sub(val, fld.mul(l[v], gc(ge)));
        }
        g.c[mono_index3(k - 1, e[0], e[1])] = fld.mul(val, inv);
    }
    for (const auto& e : mono_exponents3(k)) {
        if (e[piv] != 0) continue;
        std::uint64_t val = 0;
        for (int v = 0; v < 3; ++v) {
            if (l[v] == 0) continue;
            std::array<int, 3> ge = e;
            --ge[v];
            val = fld.add(val, fld.mul(l[v], gc(ge)));
        }
        if (val != f.c[mono_index3(k, e[0], e[1])])
            throw std::invalid_argument("form not divisible by linear factor");
    }
    return g;
}

/// Partial derivatives, as forms of degree k-1.
inline std::array<HomForm3, 3> gradient(const HomForm3& f, const PrimeField& fld) {
    const int k = f.degree;
    std::array<HomForm3, 3> g{HomForm3(k - 1), HomForm3(k - 1), HomForm3(k - 1)};
    const auto exps = mono_exponents3(k);
    for (std::size_t m = 0; m < exps.size(); ++m) {
        if (f.c[m] == 0) continue;
        const int i = exps[m][0], j = exps[m][1], l = exps[m][2];
        if (i > 0)
            g[0].c[mono_index3(k - 1, i - 1, j)] =
                fld.add(g[0].c[mono_index3(k - 1, i - 1, j)], fld.mul(f.c[m], i % fld.p));
        if (j > 0)
            g[1].c[mono_index3(k - 1, i, j - 1)] =
                fld.add(g[1].c[mono_index3(k - 1, i, j - 1)], fld.mul(f.c[m], j % fld.p));
        if (l > 0)
            g[2].c[mono_index3(k - 1, i, j)] =
                fld.add(g[2].c[mono_index3(k - 1, i, j)], fld.mul(f.c[m], l % fld.p));
    }
    return g;
}

} // namespace triarr
