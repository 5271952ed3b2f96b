#include "moller/exactlin.hpp"

#include <set>
#include <sstream>

namespace moller {

bool verify_complex(const CochainComplex& c) { return compose(c.d, c.d).is_zero(); }

namespace {

// Splitting of one degree: V^k = B (image) + H (cohomology reps) + L (complement of the kernel).
struct DegreeSplit {
    SparseMatrix basis_b;   // n x b, images d(L_{k-1})
    SparseMatrix basis_h;   // n x h
    std::vector<std::uint32_t> l_index; // standard basis vectors spanning L
    std::vector<std::string> h_labels;
    SparseMatrix t;         // [B | H | L]
    SparseMatrix t_inv;
};

SparseMatrix columns_at(const SparseMatrix& m, const std::vector<std::uint32_t>& cols)
{
    auto all = m.columns();
    std::vector<SparseVec> pick;
    for (auto c : cols)
        pick.push_back(all[c]);
    return SparseMatrix::from_columns(m.rows(), pick.size(), pick);
}

SparseMatrix hcat(const std::vector<SparseMatrix>& parts, std::size_t rows)
{
    std::vector<SparseVec> cols;
    for (const auto& p : parts)
        for (auto& col : p.columns())
            cols.push_back(std::move(col));
    return SparseMatrix::from_columns(rows, cols.size(), cols);
}

DegreeSplit split_degree(const CochainComplex& c, int k)
{
    const std::size_t n = c.space->dim(k);
    DegreeSplit s;
    SparseMatrix d_in = c.d.block(k - 1);  // V^{k-1} -> V^k
    SparseMatrix d_out = c.d.block(k);     // V^k -> V^{k+1}

    s.basis_b = columns_at(d_in, pivot_columns(d_in));
    s.l_index = pivot_columns(d_out);

    SparseMatrix z = kernel_basis(d_out);
    // Pick kernel vectors independent of the image, scanning left to right.
    SparseMatrix bz = hcat({s.basis_b, z}, n);
    std::vector<std::uint32_t> chosen;
    for (auto pc : pivot_columns(bz))
        if (pc >= s.basis_b.cols())
            chosen.push_back(pc - static_cast<std::uint32_t>(s.basis_b.cols()));
    s.basis_h = columns_at(z, chosen);
    const auto& labels = c.space->labels(k);
    auto zcols = z.columns();
    for (auto idx : chosen)
        s.h_labels.push_back("[" + labels[zcols[idx].back().index] + "]");
    make_labels_unique(s.h_labels);

    std::vector<SparseVec> lcols;
    for (auto j : s.l_index)
        lcols.push_back(unit_vector(j));
    s.t = hcat({s.basis_b, s.basis_h, SparseMatrix::from_columns(n, lcols.size(), lcols)}, n);
    if (s.t.cols() != n)
        throw Error("cohomology splitting has wrong size in degree " + std::to_string(k) + "; is d^2 = 0?");
    s.t_inv = n ? inverse(s.t) : SparseMatrix(0, 0);
    return s;
}

} // namespace

Cohomology cohomology(const CochainComplex& c, int degree)
{
    Cohomology out;
    if (c.space->dim(degree) == 0)
        return out;
    DegreeSplit s = split_degree(c, degree);
    out.dimension = s.basis_h.cols();
    out.representatives = s.basis_h.columns();
    out.labels = s.h_labels;
    return out;
}

LinearSolution solve_linear(const GradedMap& a, const GradedMap& b)
{
    if (!same_space(a.target(), b.target()))
        throw ShapeMismatch("solve_linear: A and b have different targets");
    const int s = a.shift(), t = b.shift();
    GradedMap x(b.source(), a.source(), t - s);
    for (int k : b.source()->degrees()) {
        SparseMatrix bk = b.block(k);
        SparseMatrix ak = a.block(k + t - s);
        if (ak.rows() != bk.rows())
            throw ShapeMismatch("solve_linear: block rows differ at degree " + std::to_string(k));
        if (bk.is_zero())
            continue;
        MatrixSolve sol = solve_matrix(ak, bk);
        if (!sol.consistent()) {
            LinearSolution out;
            out.certificate = SolveCertificate{k + t, sol.column, std::move(sol.certificate)};
            return out;
        }
        x.set_block(k, std::move(*sol.x));
    }
    LinearSolution out;
    out.x = std::move(x);
    return out;
}

std::string RetractCheck::describe() const
{
    std::ostringstream os;
    os << "i chain " << i_chain << ", p chain " << p_chain << ", p i = id " << pi_identity << ", dh + hd = ip - id "
       << homotopy << ", hi = 0 " << hi_zero << ", ph = 0 " << ph_zero << ", hh = 0 " << hh_zero;
    return os.str();
}

RetractCheck check_retract(const DeformationRetract& r)
{
    RetractCheck c;
    c.i_chain = compose(r.big.d, r.i) == compose(r.i, r.small.d);
    c.p_chain = compose(r.small.d, r.p) == compose(r.p, r.big.d);
    c.pi_identity = compose(r.p, r.i) == identity_map(r.small.space);
    GradedMap dh = compose(r.big.d, r.h) + compose(r.h, r.big.d);
    c.homotopy = dh == compose(r.i, r.p) - identity_map(r.big.space);
    c.hi_zero = compose(r.h, r.i).is_zero();
    c.ph_zero = compose(r.p, r.h).is_zero();
    c.hh_zero = compose(r.h, r.h).is_zero();
    return c;
}

void require_retract(const DeformationRetract& r, bool side_conditions)
{
    RetractCheck c = check_retract(r);
    if (!c.ok() || (side_conditions && !c.side_conditions()))
        throw RetractInvariantsFailed(c.describe());
}

DeformationRetract identity_retract(const CochainComplex& c)
{
    DeformationRetract r;
    r.big = c;
    r.small = c;
    r.i = identity_map(c.space);
    r.p = identity_map(c.space);
    r.h = GradedMap(c.space, c.space, -1);
    return r;
}

DeformationRetract retract_to_cohomology(const CochainComplex& c)
{
    std::map<int, DegreeSplit> splits;
    std::map<int, std::vector<std::string>> small_labels;
    for (int k : c.space->degrees()) {
        splits.emplace(k, split_degree(c, k));
        small_labels[k] = splits.at(k).h_labels;
    }
    SpacePtr small = make_space(small_labels);

    DeformationRetract r;
    r.big = c;
    r.small = CochainComplex::zero_differential(small);
    r.i = GradedMap(small, c.space, 0);
    r.p = GradedMap(c.space, small, 0);
    r.h = GradedMap(c.space, c.space, -1);
    for (const auto& [k, s] : splits) {
        const std::size_t nb = s.basis_b.cols(), nh = s.basis_h.cols();
        r.i.set_block(k, s.basis_h);
        r.p.set_block(k, s.t_inv.block(nb, nb + nh, 0, s.t_inv.rows()));
        // h sends the j-th image vector d(l_j) in degree k+1 to -l_j in degree k.
        auto up = splits.find(k + 1);
        if (up == splits.end() || s.l_index.empty())
            continue;
        const DegreeSplit& s1 = up->second;
        SparseMatrix coords = s1.t_inv.block(0, s.l_index.size(), 0, s1.t_inv.cols());
        std::vector<SparseVec> rows(c.space->dim(k));
        for (std::size_t j = 0; j < s.l_index.size(); ++j) {
            SparseVec row = coords.row(j);
            for (auto& e : row)
                e.value = -e.value;
            rows[s.l_index[j]] = std::move(row);
        }
        r.h.set_block(k + 1, SparseMatrix::from_rows(c.space->dim(k), c.space->dim(k + 1), std::move(rows)));
    }
    return r;
}

DeformationRetract compose_retracts(const DeformationRetract& outer, const DeformationRetract& inner, bool normalize)
{
    if (!same_space(inner.big.space, outer.small.space) || inner.big.d != outer.small.d)
        throw IncompatibleRetracts("inner big complex differs from outer small complex");
    DeformationRetract r;
    r.big = outer.big;
    r.small = inner.small;
    r.i = compose(outer.i, inner.i);
    r.p = compose(inner.p, outer.p);
    r.h = outer.h + compose(outer.i, compose(inner.h, outer.p));
    return normalize ? normalize_side_conditions(r) : r;
}

DeformationRetract normalize_side_conditions(const DeformationRetract& r)
{
    GradedMap pi = identity_map(r.big.space) - compose(r.i, r.p);
    GradedMap h1 = compose(pi, compose(r.h, pi));
    DeformationRetract out = r;
    out.h = scaled(compose(h1, compose(r.big.d, h1)), Rational(-1));
    return out;
}

DeformationRetract cancel_pair(const CochainComplex& c, int k, std::size_t row, std::size_t col)
{
    SparseMatrix dk = c.d.block(k);
    if (row >= dk.rows() || col >= dk.cols() || is_zero(dk.at(row, col)))
        throw DimensionMismatch("cancel_pair needs a nonzero differential entry");
    const Rational alpha = dk.at(row, col);

    auto comps = c.space->components();
    auto drop = [](std::vector<std::string>& v, std::size_t idx) { v.erase(v.begin() + static_cast<long>(idx)); };
    drop(comps[k], col);
    drop(comps[k + 1], row);
    SpacePtr small = make_space(comps);

    // Index maps between the small basis and the big basis.
    auto keep = [&](int deg, std::size_t skip) {
        std::vector<std::uint32_t> idx;
        for (std::size_t j = 0; j < c.space->dim(deg); ++j)
            if (j != skip)
                idx.push_back(static_cast<std::uint32_t>(j));
        return idx;
    };
    auto inclusion = [&](int deg, std::size_t skip) {
        auto idx = keep(deg, skip);
        std::vector<SparseVec> cols;
        for (auto j : idx)
            cols.push_back(unit_vector(j));
        return SparseMatrix::from_columns(c.space->dim(deg), cols.size(), cols);
    };
    const std::size_t none = static_cast<std::size_t>(-1);
    auto skip_of = [&](int deg) { return deg == k ? col : (deg == k + 1 ? row : none); };

    std::map<int, SparseMatrix> incl;
    for (int deg : c.space->degrees())
        incl[deg] = inclusion(deg, skip_of(deg));

    // beta: b-coefficient of d on the remaining degree-k basis; gamma: d(a) without its b part.
    SparseVec beta;
    for (const auto& e : dk.row(row))
        if (e.index != col)
            beta.push_back(e);
    SparseVec gamma;
    for (std::size_t rr = 0; rr < dk.rows(); ++rr)
        if (rr != row && !is_zero(dk.at(rr, col)))
            gamma.push_back({static_cast<std::uint32_t>(rr), dk.at(rr, col)});

    GradedMap i(small, c.space, 0), p(c.space, small, 0), h(c.space, c.space, -1);
    for (int deg : c.space->degrees()) {
        SparseMatrix in = incl[deg];
        if (deg == k) {
            // i(x) = x - (beta(x)/alpha) a
            auto kept = keep(k, col);
            for (std::size_t t = 0; t < kept.size(); ++t) {
                Rational bx = coefficient(beta, kept[t]);
                if (!is_zero(bx))
                    in.set(col, t, -bx / alpha);
            }
        }
        if (small->dim(deg))
            i.set_block(deg, in);
        SparseMatrix pr = incl[deg].transpose();
        if (deg == k + 1) {
            // p(y b + z) = z - (y/alpha) gamma
            auto kept = keep(k + 1, row);
            for (std::size_t t = 0; t < kept.size(); ++t) {
                Rational g = coefficient(gamma, kept[t]);
                if (!is_zero(g))
                    pr.set(t, row, -g / alpha);
            }
        }
        if (small->dim(deg))
            p.set_block(deg, pr);
    }
    SparseMatrix hb(c.space->dim(k), c.space->dim(k + 1));
    hb.set(col, row, -1 / alpha);
    h.set_block(k + 1, hb);

    GradedMap dsmall = compose(p, compose(c.d, i));
    DeformationRetract r;
    r.big = c;
    r.small = CochainComplex(small, dsmall);
    r.i = i;
    r.p = p;
    r.h = h;
    return r;
}

std::string dual_label(const std::string& label) { return label + "*"; }

void make_labels_unique(std::vector<std::string>& labels)
{
    std::set<std::string> seen;
    for (auto& l : labels) {
        while (seen.count(l))
            l += "'";
        seen.insert(l);
    }
}

SpacePtr dual_space(const SpacePtr& v)
{
    std::map<int, std::vector<std::string>> comps;
    for (const auto& [k, labels] : v->components()) {
        auto& out = comps[-k];
        for (const auto& l : labels)
            out.push_back(dual_label(l));
    }
    return make_space(comps);
}

GradedMap dual_map(const GradedMap& f, const SpacePtr& dual_source, const SpacePtr& dual_target)
{
    // f: V -> W of degree s; f*: W* -> V*, block from (W*)^{-k-s} to (V*)^{-k}.
    const int s = f.shift();
    GradedMap out(dual_target, dual_source, s);
    for (const auto& [k, m] : f.blocks()) {
        const int xi_degree = -k - s;
        const bool negate = ((s * xi_degree) % 2) != 0;
        SparseMatrix t = m.transpose();
        out.set_block(xi_degree, negate ? -t : t);
    }
    return out;
}

CochainComplex dual_complex(const CochainComplex& c)
{
    SpacePtr dv = dual_space(c.space);
    GradedMap d = scaled(dual_map(c.d, dv, dv), Rational(-1));
    return CochainComplex(dv, d);
}

DeformationRetract dual_retract(const DeformationRetract& r)
{
    DeformationRetract out;
    out.big = dual_complex(r.big);
    out.small = dual_complex(r.small);
    out.i = dual_map(r.p, out.big.space, out.small.space);
    out.p = dual_map(r.i, out.small.space, out.big.space);
    out.h = dual_map(r.h, out.big.space, out.big.space);
    return out;
}

} // namespace moller
