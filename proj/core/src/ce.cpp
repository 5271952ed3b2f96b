#include "moller/ce.hpp"

#include <algorithm>

namespace moller {

PartialMap CEAlgebra::order(int n) const
{
    if (n == 0)
        return PartialMap(delta0);
    return delta.order(n);
}

bool CEAlgebra::degree_convention_holds(const SpacePtr& fields) const
{
    for (const auto& [k, labels] : fields->components()) {
        const auto& dual = generators.space->labels(-k);
        if (dual.size() != labels.size())
            return false;
        for (std::size_t j = 0; j < labels.size(); ++j)
            if (dual[j] != dual_label(labels[j]))
                return false;
    }
    return generators.space->total_dim() == fields->total_dim();
}

CEAlgebra ce_from_images(const CochainComplex& generators, const std::map<int, GeneratorImages>& images, int window,
                         int max_order)
{
    if (window < 0 || max_order < 0)
        throw DimensionMismatch("window and order must be non-negative");
    CEAlgebra a;
    a.generators = generators;
    a.window = window;
    a.max_order = max_order;
    a.trunc = std::make_shared<const SymTruncation>(generators.space, window + max_order);
    const SymTruncation& t = *a.trunc;

    auto it0 = images.find(0);
    if (it0 != images.end()) {
        a.delta0_generators = it0->second;
    } else {
        SymPower one(generators.space, 1);
        a.delta0_generators = images_from_map(generators.d, one);
    }
    PartialMap d0 = extend_derivation(a.delta0_generators, 1, t);
    if (d0.has_unknown())
        throw DimensionMismatch("delta0 must preserve weight");
    a.delta0 = d0.map;

    a.delta.source = a.delta.target = t.space();
    a.delta.shift = 1;
    a.delta.max_order = max_order;
    for (const auto& [n, imgs] : images) {
        if (n < 1 || n > max_order)
            continue;
        a.delta_generators[n] = imgs;
        a.delta.orders.emplace(n, extend_derivation(imgs, 1, t));
    }
    return a;
}

CEAlgebra build_ce(const LInftyStructure& l, int window, int max_order, bool check)
{
    if (check) {
        const int upto = std::min(2 * l.max_arity() - 1, max_order + 1);
        JacobiReport jr = check_jacobi(l, std::max(upto, 1));
        if (!jr.ok()) {
            for (const auto& r : jr.arities)
                if (!r.holds)
                    throw JacobiFailed("arity " + std::to_string(r.arity) + " fails on " + r.witness_label);
        }
    }
    SpacePtr dual = dual_space(l.space());
    CochainComplex gens = dual_complex(l.complex());

    std::map<int, GeneratorImages> images;
    SymPower f1(l.space(), 1), d1(dual, 1);
    images[0] = images_from_map(dualize_bracket(l.complex().d, f1, d1), d1);

    auto accumulate = [&](int order, const GeneratorImages& add) {
        auto& target = images[order];
        if (target.empty())
            target.resize(add.size());
        for (std::size_t g = 0; g < add.size(); ++g)
            add_scaled(target[g], add[g], Rational(1));
    };
    if (l.linear_perturbation() && max_order >= 1)
        accumulate(1, images_from_map(dualize_bracket(*l.linear_perturbation(), f1, d1), d1));
    for (int n = 2; n <= l.max_arity() && n - 1 <= max_order; ++n) {
        if (!l.has_bracket(n))
            continue;
        SymPower dn(dual, n);
        accumulate(n - 1, images_from_map(dualize_bracket(l.bracket(n), l.power(n), dn), dn));
    }
    return ce_from_images(gens, images, window, max_order);
}

bool MCReport::ok() const
{
    return std::all_of(orders.begin(), orders.end(), [](const MCOrderResult& r) { return r.holds; });
}

namespace {

std::optional<std::pair<int, std::size_t>> first_known_nonzero(const PartialMap& m)
{
    for (const auto& [k, blk] : m.map.blocks()) {
        std::optional<std::size_t> best;
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (const auto& e : blk.row(r))
                if (!m.is_unknown(k, e.index) && (!best || e.index < *best))
                    best = e.index;
        if (best)
            return std::make_pair(k, *best);
    }
    return std::nullopt;
}

} // namespace

MCReport mc_check(const CEAlgebra& a)
{
    MCReport rep;
    const SymTruncation& t = a.truncation();
    PartialMap d0(a.delta0);
    for (int n = 0; n <= a.max_order; ++n) {
        PartialMap e;
        if (n == 0) {
            e = compose(d0, d0);
        } else {
            PartialMap dn = a.order(n);
            e = compose(d0, dn) + compose(dn, d0);
            for (int j = 1; j < n; ++j)
                e = e + compose(a.order(j), a.order(n - j));
        }
        MCOrderResult r;
        r.order = n;
        r.excluded = e.unknown_count();
        if (auto w = first_known_nonzero(e)) {
            r.holds = false;
            r.witness_degree = w->first;
            r.witness_column = w->second;
            r.witness_label = t.space()->labels(w->first)[w->second];
        }
        rep.orders.push_back(r);
    }
    return rep;
}

SparseMatrix weight_block(const GradedMap& m, const SymTruncation& t, int source_degree, int source_weight,
                          int target_weight)
{
    auto [c0, c1] = t.weight_range(source_degree, source_weight);
    auto [r0, r1] = t.weight_range(source_degree + m.shift(), target_weight);
    const SparseMatrix* blk = m.find_block(source_degree);
    if (!blk)
        return SparseMatrix(r1 - r0, c1 - c0);
    return blk->block(r0, r1, c0, c1);
}

namespace {

std::size_t rank_of_columns(const std::vector<SparseMatrix>& parts, std::size_t rows)
{
    std::vector<SparseVec> cols;
    for (const auto& p : parts)
        for (auto& c : p.columns())
            cols.push_back(std::move(c));
    if (cols.empty() || rows == 0)
        return 0;
    return rank(SparseMatrix::from_columns(rows, cols.size(), cols));
}

bool columns_unknown(const PartialMap& m, const SymTruncation& t, int degree, int w)
{
    auto [c0, c1] = t.weight_range(degree, w);
    for (std::size_t c = c0; c < c1; ++c)
        if (m.is_unknown(degree, c))
            return true;
    return false;
}

} // namespace

CohomologyTable ce_cohomology(const CEAlgebra& a, int degree, int weight_max)
{
    if (!mc_check(a).ok())
        throw MCFailed("the CE differential does not square to zero on the truncation");
    const SymTruncation& t = a.truncation();
    CohomologyTable table;
    table.degree = degree;
    table.filtered_only = !a.delta0.is_zero();
    for (const auto& [n, pm] : a.delta.orders)
        if (n >= 2 && !pm.map.is_zero())
            table.filtered_only = true;
    const PartialMap d1 = a.order(1);

    for (int w = 0; w <= weight_max; ++w) {
        CohomologyRow row;
        row.weight = w;
        row.full_dim = t.dim(degree, w);
        if (w > t.max_weight()) {
            row.excluded = true;
            table.rows.push_back(row);
            continue;
        }
        SparseMatrix d_in = weight_block(a.delta0, t, degree - 1, w, w);
        SparseMatrix d_out = weight_block(a.delta0, t, degree, w, w);
        const std::size_t rank_in = rank(d_in);
        SparseMatrix z = kernel_basis(d_out);
        row.free_dim = z.cols() - rank_in;

        if (w + 1 > t.max_weight() || columns_unknown(d1, t, degree, w) ||
            (w >= 1 && columns_unknown(d1, t, degree - 1, w - 1))) {
            row.excluded = true;
            table.rows.push_back(row);
            continue;
        }
        // Kernel of the induced map H^deg_w -> H^{deg+1}_{w+1}.
        SparseMatrix m = weight_block(d1.map, t, degree, w, w + 1);
        SparseMatrix d_up = weight_block(a.delta0, t, degree, w + 1, w + 1);
        const std::size_t rows_up = m.rows();
        const std::size_t rank_up = rank_of_columns({d_up}, rows_up);
        const std::size_t rank_mz = rank_of_columns({m * z, d_up}, rows_up) - rank_up;
        row.kernel_dim = z.cols() - rank_mz - rank_in;

        // Image of the induced map H^{deg-1}_{w-1} -> H^deg_w.
        std::size_t image = 0;
        if (w >= 1) {
            SparseMatrix m_prev = weight_block(d1.map, t, degree - 1, w - 1, w);
            SparseMatrix z_prev = kernel_basis(weight_block(a.delta0, t, degree - 1, w - 1, w - 1));
            image = rank_of_columns({m_prev * z_prev, d_in}, m_prev.rows()) - rank_of_columns({d_in}, d_in.rows());
        }
        row.perturbed_dim = row.kernel_dim - image;
        table.rows.push_back(row);
    }
    return table;
}

} // namespace moller
