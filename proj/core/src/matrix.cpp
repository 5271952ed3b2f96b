#include "moller/matrix.hpp"

#include "moller/errors.hpp"

#include <algorithm>

namespace moller {

void axpy(SparseVec& y, const Rational& a, const SparseVec& x)
{
    if (is_zero(a) || x.empty())
        return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
            out.push_back(std::move(y[i++]));
        } else if (i == y.size() || x[j].index < y[i].index) {
            out.push_back({x[j].index, a * x[j].value});
            ++j;
        } else {
            Rational v = y[i].value + a * x[j].value;
            if (!is_zero(v))
                out.push_back({x[j].index, std::move(v)});
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

SparseVec add(const SparseVec& x, const SparseVec& y)
{
    SparseVec out = x;
    axpy(out, Rational(1), y);
    return out;
}

Rational dot(const SparseVec& x, const SparseVec& y)
{
    Rational s = 0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].index < y[j].index)
            ++i;
        else if (y[j].index < x[i].index)
            ++j;
        else
            s += x[i++].value * y[j++].value;
    }
    return s;
}

Rational coefficient(const SparseVec& x, std::uint32_t index)
{
    auto it = std::lower_bound(x.begin(), x.end(), index,
                               [](const Entry& e, std::uint32_t k) { return e.index < k; });
    if (it != x.end() && it->index == index)
        return it->value;
    return 0;
}

SparseVec unit_vector(std::uint32_t index) { return SparseVec{{index, Rational(1)}}; }

void Accumulator::resize(std::size_t n)
{
    values_.assign(n, Rational(0));
    used_.assign(n, 0);
    touched_.clear();
}

void Accumulator::add(std::uint32_t index, const Rational& v)
{
    if (!used_[index]) {
        used_[index] = 1;
        touched_.push_back(index);
    }
    values_[index] += v;
}

void Accumulator::add_scaled(const SparseVec& x, const Rational& a)
{
    for (const auto& e : x) {
        if (!used_[e.index]) {
            used_[e.index] = 1;
            touched_.push_back(e.index);
        }
        values_[e.index] += a * e.value;
    }
}

SparseVec Accumulator::take()
{
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    out.reserve(touched_.size());
    for (auto k : touched_) {
        if (!is_zero(values_[k]))
            out.push_back({k, values_[k]});
        values_[k] = 0;
        used_[k] = 0;
    }
    touched_.clear();
    return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].push_back({static_cast<std::uint32_t>(i), Rational(1)});
    return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t rows, std::size_t cols, std::vector<SparseVec> data)
{
    if (data.size() != rows)
        throw ShapeMismatch("row count");
    SparseMatrix m(rows, cols);
    for (auto& r : data)
        if (!r.empty() && r.back().index >= cols)
            throw ShapeMismatch("column index out of range");
    m.data_ = std::move(data);
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::size_t cols, const std::vector<SparseVec>& columns)
{
    if (columns.size() != cols)
        throw ShapeMismatch("column count");
    SparseMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& e : columns[c]) {
            if (e.index >= rows)
                throw ShapeMismatch("row index out of range");
            m.data_[e.index].push_back({static_cast<std::uint32_t>(c), e.value});
        }
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense)
{
    std::size_t r = dense.size();
    std::size_t c = r ? dense[0].size() : 0;
    SparseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (!moller::is_zero(dense[i][j]))
                m.data_[i].push_back({static_cast<std::uint32_t>(j), dense[i][j]});
    return m;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const
{
    return coefficient(data_[r], static_cast<std::uint32_t>(c));
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v)
{
    if (r >= rows_ || c >= cols_)
        throw ShapeMismatch("set out of range");
    auto& row = data_[r];
    auto k = static_cast<std::uint32_t>(c);
    auto it = std::lower_bound(row.begin(), row.end(), k,
                               [](const Entry& e, std::uint32_t x) { return e.index < x; });
    if (it != row.end() && it->index == k) {
        if (moller::is_zero(v))
            row.erase(it);
        else
            it->value = v;
    } else if (!moller::is_zero(v)) {
        row.insert(it, Entry{k, v});
    }
}

void SparseMatrix::add_to(std::size_t r, std::size_t c, const Rational& v)
{
    if (moller::is_zero(v))
        return;
    set(r, c, at(r, c) + v);
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : data_)
        n += r.size();
    return n;
}

bool SparseMatrix::is_zero() const
{
    for (const auto& r : data_)
        if (!r.empty())
            return false;
    return true;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r])
            t.data_[e.index].push_back({static_cast<std::uint32_t>(r), e.value});
    return t;
}

std::vector<SparseVec> SparseMatrix::columns() const
{
    std::vector<SparseVec> cols(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r])
            cols[e.index].push_back({static_cast<std::uint32_t>(r), e.value});
    return cols;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const
{
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_, Rational(0)));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r])
            d[r][e.index] = e.value;
    return d;
}

SparseMatrix SparseMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const
{
    if (r1 < r0 || c1 < c0 || r1 > rows_ || c1 > cols_)
        throw ShapeMismatch("block out of range");
    SparseMatrix b(r1 - r0, c1 - c0);
    for (std::size_t r = r0; r < r1; ++r) {
        const auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c0),
                                   [](const Entry& e, std::uint32_t x) { return e.index < x; });
        for (; it != row.end() && it->index < c1; ++it)
            b.data_[r - r0].push_back({static_cast<std::uint32_t>(it->index - c0), it->value});
    }
    return b;
}

void SparseMatrix::add_block(std::size_t r0, std::size_t c0, const SparseMatrix& m)
{
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_)
        throw ShapeMismatch("add_block out of range");
    for (std::size_t r = 0; r < m.rows_; ++r) {
        if (m.data_[r].empty())
            continue;
        SparseVec shifted;
        shifted.reserve(m.data_[r].size());
        for (const auto& e : m.data_[r])
            shifted.push_back({static_cast<std::uint32_t>(e.index + c0), e.value});
        axpy(data_[r0 + r], Rational(1), shifted);
    }
}

SparseVec SparseMatrix::apply(const SparseVec& x) const
{
    SparseVec out;
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational v = dot(data_[r], x);
        if (!moller::is_zero(v))
            out.push_back({static_cast<std::uint32_t>(r), std::move(v)});
    }
    return out;
}

SparseVec SparseMatrix::apply_left(const SparseVec& f) const
{
    Accumulator acc(cols_);
    for (const auto& e : f) {
        if (e.index >= rows_)
            throw ShapeMismatch("functional length");
        acc.add_scaled(data_[e.index], e.value);
    }
    return acc.take();
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& b) const
{
    if (cols_ != b.rows_)
        throw ShapeMismatch("matrix product " + std::to_string(rows_) + "x" + std::to_string(cols_) + " * " +
                            std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    SparseMatrix c(rows_, b.cols_);
    Accumulator acc(b.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (data_[r].empty())
            continue;
        for (const auto& e : data_[r])
            acc.add_scaled(b.data_[e.index], e.value);
        c.data_[r] = acc.take();
    }
    return c;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& b) const
{
    if (rows_ != b.rows_ || cols_ != b.cols_)
        throw ShapeMismatch("matrix sum");
    SparseMatrix c = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        axpy(c.data_[r], Rational(1), b.data_[r]);
    return c;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& b) const
{
    if (rows_ != b.rows_ || cols_ != b.cols_)
        throw ShapeMismatch("matrix difference");
    SparseMatrix c = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        axpy(c.data_[r], Rational(-1), b.data_[r]);
    return c;
}

SparseMatrix SparseMatrix::operator-() const { return scaled(Rational(-1)); }

SparseMatrix SparseMatrix::scaled(const Rational& a) const
{
    if (moller::is_zero(a))
        return SparseMatrix(rows_, cols_);
    SparseMatrix c = *this;
    for (auto& r : c.data_)
        for (auto& e : r)
            e.value *= a;
    return c;
}

bool SparseMatrix::operator==(const SparseMatrix& b) const
{
    return rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_;
}

} // namespace moller
