#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <vector>

namespace triarr {

using BigInt = boost::multiprecision::cpp_int;

/// Dense matrix with arbitrary-precision integer entries.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigInt> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    BigInt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace detail {

inline void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    // column dst -= q * column src
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, dst) -= q * m.at(i, src);
}

inline void col_swap(IntMatrix& m, std::size_t j1, std::size_t j2) {
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, j1), m.at(i, j2));
}

inline void col_neg(IntMatrix& m, std::size_t j) {
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = -m.at(i, j);
}

} // namespace detail

/// Basis of the integer lattice {v : Mv = 0}, as the columns of the returned
/// matrix.  Computed by unimodular column reduction (Hermite-style), so the
/// basis spans the full integer kernel, not a finite-index sublattice.
inline IntMatrix integer_kernel(const IntMatrix& m_in) {
    IntMatrix m = m_in;
    IntMatrix u(m.cols, m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) u.at(j, j) = 1;

    std::size_t pivot_cols = 0;
    for (std::size_t row = 0; row < m.rows && pivot_cols < m.cols; ++row) {
        // Euclidean reduction of this row across the active columns.
        for (;;) {
            std::size_t best = m.cols;
            for (std::size_t j = pivot_cols; j < m.cols; ++j) {
                if (m.at(row, j) == 0) continue;
                if (best == m.cols ||
                    abs(m.at(row, j)) < abs(m.at(row, best)))
                    best = j;
            }
            if (best == m.cols) break; // row already zero on active columns
            bool others = false;
            for (std::size_t j = pivot_cols; j < m.cols; ++j) {
                if (j == best || m.at(row, j) == 0) continue;
                BigInt q = m.at(row, j) / m.at(row, best);
                if (q != 0) {
                    detail::col_axpy(m, j, best, q);
                    detail::col_axpy(u, j, best, q);
                }
                if (m.at(row, j) != 0) others = true;
            }
            if (!others) {
                if (best != pivot_cols) {
                    detail::col_swap(m, best, pivot_cols);
                    detail::col_swap(u, best, pivot_cols);
                }
                if (m.at(row, pivot_cols) < 0) {
                    detail::col_neg(m, pivot_cols);
                    detail::col_neg(u, pivot_cols);
                }
                ++pivot_cols;
                break;
            }
        }
    }

    IntMatrix basis(m.cols, m.cols - pivot_cols);
    for (std::size_t j = pivot_cols; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.cols; ++i)
            basis.at(i, j - pivot_cols) = u.at(i, j);
    return basis;
}

inline std::vector<BigInt> mat_vec(const IntMatrix& m, const std::vector<BigInt>& v) {
    std::vector<BigInt> out(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
    return out;
}

/// Whether v lies in the lattice spanned by the columns of basis.  Column
/// reduction of [basis | v]: v is in the lattice iff appending it does not
/// change the lattice, i.e. the kernel of [basis | v] contains a vector with
/// last coordinate +-1.
inline bool lattice_contains(const IntMatrix& basis, const std::vector<BigInt>& v) {
    IntMatrix ext(basis.rows, basis.cols + 1);
    for (std::size_t i = 0; i < basis.rows; ++i) {
        for (std::size_t j = 0; j < basis.cols; ++j) ext.at(i, j) = basis.at(i, j);
        ext.at(i, basis.cols) = v[i];
    }
    IntMatrix rel = integer_kernel(ext); // relations among the columns
    for (std::size_t j = 0; j < rel.cols; ++j) {
        const BigInt& last = rel.at(basis.cols, j);
        if (last == 1 || last == -1) return true;
    }
    return false;
}

} // namespace triarr
