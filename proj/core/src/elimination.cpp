#include "moller/elimination.hpp"

#include "moller/errors.hpp"

#include <algorithm>
#include <numeric>

namespace moller {

namespace {

// Incremental echelon form: each incoming row is reduced on its leading
// entries against existing pivot rows, and becomes a new pivot otherwise.
struct Echelon {
    explicit Echelon(std::size_t cols) : pivot_row(cols, -1) {}

    // Returns the index of the new pivot row, or -1 if the row reduced to zero.
    long insert(SparseVec v)
    {
        while (!v.empty()) {
            long p = pivot_row[v.front().index];
            if (p < 0)
                break;
            Rational factor = -v.front().value;
            axpy(v, factor, rows[p]);
        }
        if (v.empty())
            return -1;
        Rational inv = 1 / v.front().value;
        for (auto& e : v)
            e.value *= inv;
        pivot_row[v.front().index] = static_cast<long>(rows.size());
        rows.push_back(std::move(v));
        return static_cast<long>(rows.size()) - 1;
    }

    std::vector<SparseVec> rows;
    std::vector<long> pivot_row;
};

RowEchelon finish(Echelon e, std::size_t cols)
{
    std::vector<std::size_t> order(e.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return e.rows[a].front().index < e.rows[b].front().index; });
    // Back-reduce from the rightmost pivot so every pivot column is cleared.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        SparseVec& r = e.rows[*it];
        std::vector<std::uint32_t> hits;
        for (std::size_t k = 1; k < r.size(); ++k)
            if (e.pivot_row[r[k].index] >= 0)
                hits.push_back(r[k].index);
        for (auto c : hits) {
            Rational factor = -coefficient(r, c);
            if (!is_zero(factor))
                axpy(r, factor, e.rows[e.pivot_row[c]]);
        }
    }
    RowEchelon out;
    out.cols = cols;
    for (auto k : order) {
        out.pivots.push_back(e.rows[k].front().index);
        out.rows.push_back(std::move(e.rows[k]));
    }
    return out;
}

} // namespace

RowEchelon rref_sparse(const SparseMatrix& a)
{
    Echelon e(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (!a.row(r).empty())
            e.insert(a.row(r));
    return finish(std::move(e), a.cols());
}

RowEchelon rref_dense(const SparseMatrix& a)
{
    auto m = a.to_dense();
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    RowEchelon out;
    out.cols = cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (!is_zero(m[order[r]][c])) {
                piv = r;
                break;
            }
        if (piv == rows)
            continue;
        std::swap(order[rank], order[piv]);
        auto& prow = m[order[rank]];
        Rational inv = 1 / prow[c];
        for (std::size_t k = c; k < cols; ++k)
            prow[k] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || is_zero(m[order[r]][c]))
                continue;
            Rational f = m[order[r]][c];
            auto& row = m[order[r]];
            for (std::size_t k = c; k < cols; ++k)
                if (!is_zero(prow[k]))
                    row[k] -= f * prow[k];
        }
        out.pivots.push_back(static_cast<std::uint32_t>(c));
        ++rank;
    }
    for (std::size_t k = 0; k < rank; ++k) {
        SparseVec v;
        for (std::size_t c = 0; c < cols; ++c)
            if (!is_zero(m[order[k]][c]))
                v.push_back({static_cast<std::uint32_t>(c), m[order[k]][c]});
        out.rows.push_back(std::move(v));
    }
    return out;
}

RowEchelon rref(const SparseMatrix& a)
{
    if (a.rows() <= kDenseThreshold && a.cols() <= kDenseThreshold)
        return rref_dense(a);
    return rref_sparse(a);
}

std::size_t rank(const SparseMatrix& a) { return rref(a).pivots.size(); }

std::vector<std::uint32_t> pivot_columns(const SparseMatrix& a) { return rref(a).pivots; }

SparseMatrix kernel_basis(const SparseMatrix& a)
{
    RowEchelon e = rref(a);
    std::vector<char> is_pivot(a.cols(), 0);
    for (auto p : e.pivots)
        is_pivot[p] = 1;
    std::vector<SparseVec> cols;
    // Column f of the kernel basis: e_f minus the pivot coordinates in column f.
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> by_free(a.cols());
    for (std::size_t k = 0; k < e.rows.size(); ++k)
        for (const auto& ent : e.rows[k])
            if (!is_pivot[ent.index])
                by_free[ent.index].push_back({e.pivots[k], -ent.value});
    for (std::uint32_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        SparseVec v;
        for (auto& [p, val] : by_free[f])
            v.push_back({p, val});
        v.push_back({f, Rational(1)});
        std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
        cols.push_back(std::move(v));
    }
    return SparseMatrix::from_columns(a.cols(), cols.size(), cols);
}

SparseMatrix inverse(const SparseMatrix& a)
{
    if (a.rows() != a.cols())
        throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<SparseVec> aug(n);
    for (std::size_t r = 0; r < n; ++r) {
        aug[r] = a.row(r);
        aug[r].push_back({static_cast<std::uint32_t>(n + r), Rational(1)});
    }
    RowEchelon e = rref(SparseMatrix::from_rows(n, 2 * n, std::move(aug)));
    if (e.pivots.size() != n || (n > 0 && e.pivots.back() >= n))
        throw DimensionMismatch("matrix is singular");
    std::vector<SparseVec> rows(n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& ent : e.rows[k])
            if (ent.index >= n)
                rows[k].push_back({static_cast<std::uint32_t>(ent.index - n), ent.value});
    return SparseMatrix::from_rows(n, n, std::move(rows));
}

MatrixSolve solve_matrix(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows() != b.rows())
        throw ShapeMismatch("solve: row counts differ");
    const std::size_t m = a.rows(), n = a.cols(), r = b.cols();
    auto augmented = [&](bool track) {
        std::vector<SparseVec> rows(m);
        for (std::size_t i = 0; i < m; ++i) {
            rows[i] = a.row(i);
            for (const auto& e : b.row(i))
                rows[i].push_back({static_cast<std::uint32_t>(n + e.index), e.value});
            if (track)
                rows[i].push_back({static_cast<std::uint32_t>(n + r + i), Rational(1)});
        }
        return rows;
    };

    MatrixSolve out;
    Echelon e(n + r);
    bool consistent = true;
    for (auto& row : augmented(false)) {
        long k = e.insert(std::move(row));
        if (k >= 0 && e.rows[k].front().index >= n) {
            consistent = false;
            break;
        }
    }

    if (consistent) {
        std::vector<SparseVec> x(n);
        std::vector<std::uint32_t> pivcols;
        for (const auto& row : e.rows)
            pivcols.push_back(row.front().index);
        std::vector<std::size_t> order(e.rows.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return pivcols[p] > pivcols[q]; });
        for (auto k : order) {
            const SparseVec& row = e.rows[k];
            SparseVec val;
            for (const auto& ent : row)
                if (ent.index >= n)
                    val.push_back({static_cast<std::uint32_t>(ent.index - n), ent.value});
            for (std::size_t t = 1; t < row.size() && row[t].index < n; ++t)
                axpy(val, -row[t].value, x[row[t].index]);
            x[pivcols[k]] = std::move(val);
        }
        out.x = SparseMatrix::from_rows(n, r, std::move(x));
        return out;
    }

    // Second pass tracking row combinations; the first row whose coefficient
    // part vanishes while its right-hand side survives is the certificate.
    Echelon t(n + r + m);
    for (auto& row : augmented(true)) {
        long k = t.insert(std::move(row));
        if (k < 0)
            continue;
        const SparseVec& v = t.rows[k];
        if (v.front().index >= n && v.front().index < n + r) {
            SparseVec f;
            for (const auto& ent : v)
                if (ent.index >= n + r)
                    f.push_back({static_cast<std::uint32_t>(ent.index - n - r), ent.value});
            out.certificate = std::move(f);
            out.column = v.front().index - n;
            return out;
        }
    }
    throw Error("solve_matrix: inconsistency vanished on the tracking pass");
}

} // namespace moller
