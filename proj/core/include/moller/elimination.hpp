#pragma once

#include "moller/matrix.hpp"

#include <optional>

namespace moller {

// Reduced row echelon form. Pivots are chosen column by column from the
// left, taking the lowest-index row that still has a nonzero entry there;
// the reduced form is unique, so sparse and dense paths agree exactly.
struct RowEchelon {
    std::size_t cols = 0;
    std::vector<SparseVec> rows;        // sorted by pivot column
    std::vector<std::uint32_t> pivots;  // pivots[k] is the leading column of rows[k]
};

// Matrices with both dimensions at most this size use dense elimination.
inline constexpr std::size_t kDenseThreshold = 64;

RowEchelon rref(const SparseMatrix& a);
RowEchelon rref_sparse(const SparseMatrix& a);
RowEchelon rref_dense(const SparseMatrix& a);

std::size_t rank(const SparseMatrix& a);
std::vector<std::uint32_t> pivot_columns(const SparseMatrix& a);

// Columns form a basis of ker a, one per free column, in increasing order.
SparseMatrix kernel_basis(const SparseMatrix& a);

// Throws DimensionMismatch for non-square or singular input.
SparseMatrix inverse(const SparseMatrix& a);

struct MatrixSolve {
    std::optional<SparseMatrix> x;  // a * x == b, free variables set to zero
    SparseVec certificate;          // f with f a = 0 and f b[:, column] != 0
    std::size_t column = 0;
    bool consistent() const { return x.has_value(); }
};

MatrixSolve solve_matrix(const SparseMatrix& a, const SparseMatrix& b);

} // namespace moller
