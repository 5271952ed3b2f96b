#pragma once

#include "moller/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace moller {

struct Entry {
    std::uint32_t index;
    Rational value;
    bool operator==(const Entry& o) const { return index == o.index && value == o.value; }
};

// Sorted by index, no explicit zeros.
using SparseVec = std::vector<Entry>;

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);
SparseVec add(const SparseVec& x, const SparseVec& y);
Rational dot(const SparseVec& x, const SparseVec& y);
Rational coefficient(const SparseVec& x, std::uint32_t index);
SparseVec unit_vector(std::uint32_t index);

// Accumulates scattered contributions, then emits a sorted SparseVec.
class Accumulator {
public:
    explicit Accumulator(std::size_t n = 0) { resize(n); }
    void resize(std::size_t n);
    void add(std::uint32_t index, const Rational& v);
    void add_scaled(const SparseVec& x, const Rational& a);
    SparseVec take();

private:
    std::vector<Rational> values_;
    std::vector<char> used_;
    std::vector<std::uint32_t> touched_;
};

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<SparseVec> data);
    static SparseMatrix from_columns(std::size_t rows, std::size_t cols, const std::vector<SparseVec>& columns);
    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const SparseVec& row(std::size_t r) const { return data_[r]; }
    SparseVec& row_mut(std::size_t r) { return data_[r]; }

    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& v);
    void add_to(std::size_t r, std::size_t c, const Rational& v);

    std::size_t nnz() const;
    bool is_zero() const;

    SparseMatrix transpose() const;
    std::vector<SparseVec> columns() const;
    std::vector<std::vector<Rational>> to_dense() const;

    // rows [r0, r1), columns [c0, c1)
    SparseMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    // Adds m into this matrix with its top-left corner at (r0, c0).
    void add_block(std::size_t r0, std::size_t c0, const SparseMatrix& m);

    SparseVec apply(const SparseVec& x) const;      // A x
    SparseVec apply_left(const SparseVec& f) const; // f^T A

    SparseMatrix operator*(const SparseMatrix& b) const;
    SparseMatrix operator+(const SparseMatrix& b) const;
    SparseMatrix operator-(const SparseMatrix& b) const;
    SparseMatrix operator-() const;
    SparseMatrix scaled(const Rational& a) const;

    bool operator==(const SparseMatrix& b) const;
    bool operator!=(const SparseMatrix& b) const { return !(*this == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec> data_;
};

} // namespace moller
