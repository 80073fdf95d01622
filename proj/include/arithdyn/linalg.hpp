#pragma once

#include "arithdyn/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace arithdyn {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct RankProfile {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;  // original row indices, in elimination order
    std::vector<std::size_t> pivot_cols;  // ascending
    /// The final fraction-free pivot: +-det of the pivot rows x pivot columns
    /// submatrix. Nonzero whenever rank > 0.
    Integer minor;
};

/// Fraction-free (Bareiss) elimination with column skipping. Every division
/// performed is exact.
RankProfile bareiss_rank(IntMatrix m);

Integer determinant(IntMatrix m);

/// Rank over F_p, p < 2^63.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// Solves A X = B exactly for square nonsingular A. Returns the columns of X.
/// Throws InvalidInput if A is singular.
std::vector<std::vector<Rational>> solve_exact(const IntMatrix& a, const std::vector<std::vector<Integer>>& rhs);

}  // namespace arithdyn
