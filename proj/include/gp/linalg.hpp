#pragma once

#include <optional>
#include <vector>

#include "gp/complex_ball.hpp"
#include "gp/rational.hpp"

namespace gp {
namespace linalg {

using QMatrix = std::vector<std::vector<BigRational>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;
using BMatrix = std::vector<std::vector<ComplexBall>>;

/// Clear denominators row by row (rank preserving).
inline ZMatrix to_integer_rows(const QMatrix& m) {
    ZMatrix out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        mpz_class l = 1;
        for (const auto& q : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        out[i].reserve(m[i].size());
        for (const auto& q : m[i]) {
            mpz_class v = q.get_num() * (l / q.get_den());
            out[i].push_back(v);
        }
    }
    return out;
}

/// Exact rank by fraction-free (Bareiss) elimination. Deterministic:
/// pivot is the first row with a nonzero entry in the current column.
inline size_t exact_rank(const QMatrix& mq) {
    ZMatrix m = to_integer_rows(mq);
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    mpz_class prev = 1;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                mpz_class t = m[i][j] * m[rank][col] - m[i][col] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

/// One exact kernel vector of the homogeneous system M x = 0 (M given as
/// rows), or nullopt when the kernel is trivial. The lexicographically
/// first free column is set to 1 and the pivot variables back-solved;
/// everything is exact rational Gauss–Jordan.
inline std::optional<std::vector<BigRational>> exact_kernel_vector(QMatrix m, size_t cols) {
    size_t rows = m.size();
    std::vector<long> pivot_col_of_row;
    std::vector<bool> is_pivot_col(cols, false);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        BigRational inv_p = 1 / m[rank][col];
        for (size_t j = col; j < cols; ++j) m[rank][j] *= inv_p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            BigRational f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_col_of_row.push_back(static_cast<long>(col));
        is_pivot_col[col] = true;
        ++rank;
    }
    if (rank == cols) return std::nullopt;
    size_t free_col = 0;
    while (free_col < cols && is_pivot_col[free_col]) ++free_col;
    std::vector<BigRational> x(cols, BigRational(0));
    x[free_col] = 1;
    for (size_t r = 0; r < rank; ++r) {
        // row r: x[pivot] + sum_{j non-pivot} m[r][j] x[j] = 0
        x[static_cast<size_t>(pivot_col_of_row[r])] = -m[r][free_col];
    }
    return x;
}

/// One kernel vector of a ball matrix, by division-free cross-multiplication
/// elimination with ball-certified pivot nonvanishing. A column where no
/// remaining entry can be certified nonzero raises Inconclusive (escalate
/// precision) unless the row budget is already exhausted. The first free
/// column is normalized to 1.
inline std::vector<ComplexBall> ball_kernel_vector(BMatrix m, size_t cols, Prec prec) {
    size_t rows = m.size();
    std::vector<long> pivot_col_of_row(rows, -1);
    std::vector<bool> is_pivot_col(cols, false);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        bool ambiguous = false;
        while (piv < rows && !m[piv][col].nonzero_certified()) {
            bool exact_zero = m[piv][col].is_exact() && m[piv][col].contains_zero();
            if (!exact_zero) ambiguous = true;
            ++piv;
        }
        if (piv == rows) {
            if (ambiguous && rank < rows)
                throw Inconclusive("ball_kernel_vector: pivot sign not certified in column " +
                                   std::to_string(col));
            continue; // column certified-free enough: all entries exact zeros
        }
        std::swap(m[piv], m[rank]);
        for (size_t i = rank + 1; i < rows; ++i) {
            ComplexBall f = m[i][col];
            for (size_t j = col + 1; j < cols; ++j)
                m[i][j] = m[i][j] * m[rank][col] - f * m[rank][j];
            m[i][col] = ComplexBall(prec);
        }
        pivot_col_of_row[rank] = static_cast<long>(col);
        is_pivot_col[col] = true;
        ++rank;
    }
    size_t free_col = 0;
    while (free_col < cols && is_pivot_col[free_col]) ++free_col;
    if (free_col == cols)
        throw Inconclusive("ball_kernel_vector: no free column (matrix certified full rank)");
    std::vector<ComplexBall> x(cols, ComplexBall(prec));
    x[free_col] = ComplexBall::from_long(1, prec);
    for (size_t r = rank; r-- > 0;) {
        size_t pc = static_cast<size_t>(pivot_col_of_row[r]);
        ComplexBall acc(prec);
        for (size_t j = pc + 1; j < cols; ++j) {
            if (!is_pivot_col[j] && j != free_col) continue; // stays zero
            acc = acc + m[r][j] * x[j];
        }
        x[pc] = -(acc / m[r][pc]);
    }
    return x;
}

} // namespace linalg
} // namespace gp
