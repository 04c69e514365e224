#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "triarr/fp.hpp"

namespace triarr {

/// Dense matrix over a prime field, row-major, entries in [0, p).
struct FpMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> a; // rows * cols

    FpMatrix() = default;
    FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    std::uint64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place reduced row echelon form; returns the pivot column of each pivot
/// row in order.
inline std::vector<std::size_t> rref_fp(FpMatrix& m, const PrimeField& f) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t sel = r;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < m.cols; ++j)
                std::swap(m.a[sel * m.cols + j], m.a[r * m.cols + j]);
        const std::uint64_t piv_inv = f.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j)
            m.at(r, j) = f.mul(m.at(r, j), piv_inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const std::uint64_t x = m.at(i, c);
            if (x == 0) continue;
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(x, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Rank via forward elimination (destroys m).
inline std::size_t rank_fp_inplace(FpMatrix& m, const PrimeField& f) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t sel = r;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < m.cols; ++j)
                std::swap(m.a[sel * m.cols + j], m.a[r * m.cols + j]);
        const std::uint64_t piv_inv = f.inv(m.at(r, c));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            const std::uint64_t x = m.at(i, c);
            if (x == 0) continue;
            const std::uint64_t factor = f.mul(x, piv_inv);
            m.at(i, c) = 0;
            for (std::size_t j = c + 1; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

inline std::size_t rank_fp(FpMatrix m, const PrimeField& f) {
    return rank_fp_inplace(m, f);
}

/// Echelon-normalized basis of the right null space.  Each basis vector has a
/// 1 in "its" free column, so the output is deterministic.
inline std::vector<std::vector<std::uint64_t>> kernel_fp(FpMatrix m, const PrimeField& f) {
    const auto pivots = rref_fp(m, f);
    std::vector<char> is_pivot(m.cols, 0);
    for (auto c : pivots) is_pivot[c] = 1;

    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t free_c = 0; free_c < m.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<std::uint64_t> v(m.cols, 0);
        v[free_c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = f.neg(m.at(r, free_c));
        basis.push_back(std::move(v));
    }
#ifndef NDEBUG
    // rank + kernel dim = cols
    assert(pivots.size() + basis.size() == m.cols);
#endif
    return basis;
}

inline std::vector<std::uint64_t> mat_vec(const FpMatrix& m, const std::vector<std::uint64_t>& v,
                                          const PrimeField& f) {
    std::vector<std::uint64_t> out(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < m.cols; ++j)
            acc = f.add(acc, f.mul(m.at(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

} // namespace triarr
