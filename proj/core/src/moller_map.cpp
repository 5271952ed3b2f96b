#include "moller/moller_map.hpp"

#include <algorithm>

namespace moller {

namespace {

// Drops columns of source weight above `window` and flags them unknown.
void restrict_window(PartialMap& m, const SymTruncation& t, int window)
{
    for (const auto& [k, labels] : t.space()->components()) {
        const std::size_t limit = t.weight_range(k, std::min(window, t.max_weight())).second;
        if (window >= t.max_weight())
            continue;
        if (const SparseMatrix* blk = m.map.find_block(k)) {
            SparseMatrix keep(blk->rows(), blk->cols());
            for (std::size_t r = 0; r < blk->rows(); ++r)
                for (const auto& e : blk->row(r))
                    if (e.index < limit)
                        keep.row_mut(r).push_back(e);
            m.map.set_block(k, std::move(keep));
        }
        for (std::size_t c = limit; c < labels.size(); ++c)
            m.mark_unknown(k, c);
    }
}

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

PartialMap identity_partial(const SymTruncation& t) { return PartialMap(identity_map(t.space())); }

std::size_t unknown_within(const PartialMap& m, const SymTruncation& t, int window)
{
    std::size_t n = 0;
    for (const auto& [k, flags] : m.unknown) {
        const std::size_t limit = t.weight_range(k, std::min(window, t.max_weight())).second;
        for (std::size_t c = 0; c < std::min(limit, flags.size()); ++c)
            n += flags[c] ? 1 : 0;
    }
    return n;
}

} // namespace

MollerCandidate identity_candidate(const CEAlgebra& a)
{
    MollerCandidate c;
    c.K.source = c.K.target = a.truncation().space();
    c.K.shift = 0;
    c.K.max_order = a.max_order;
    c.K.orders.emplace(0, identity_partial(a.truncation()));
    return c;
}

MollerCandidate algebra_candidate(const CEAlgebra& a, std::vector<GeneratorImages> images_by_order)
{
    MollerCandidate c;
    c.mode = MollerMode::Algebra;
    c.K = extend_algebra_map(images_by_order, a.truncation(), a.max_order);
    c.generator_images = std::move(images_by_order);
    return c;
}

bool MollerVerification::verified() const
{
    return std::all_of(orders.begin(), orders.end(), [](const MollerOrderCheck& o) { return o.holds; });
}

MollerVerification verify_moller(const CEAlgebra& a, const MollerCandidate& cand)
{
    const SymTruncation& t = a.truncation();
    MollerVerification out;
    std::vector<PartialMap> K;
    for (int n = 0; n <= a.max_order; ++n) {
        PartialMap kn = cand.K.order(n);
        if (!same_space(kn.map.source(), t.space()))
            throw ShapeMismatch("candidate does not act on the CE truncation");
        restrict_window(kn, t, a.window);
        K.push_back(std::move(kn));
    }
    const PartialMap d0(a.delta0);
    for (int n = 0; n <= a.max_order; ++n) {
        PartialMap e = compose(d0, K[n]) + scaled(compose(K[n], d0), Rational(-1));
        for (int j = 1; j <= n; ++j)
            e = e + compose(a.order(j), K[n - j]);
        restrict_window(e, t, a.window);
        MollerOrderCheck c;
        c.order = n;
        c.excluded = unknown_within(e, t, a.window);
        if (auto w = first_known_nonzero(e)) {
            c.holds = false;
            c.witness_degree = w->first;
            c.witness_column = w->second;
            c.witness_label = t.space()->labels(w->first)[w->second];
        }
        out.orders.push_back(c);
    }
    return out;
}

std::optional<GradedMap> find_splitting(const CEAlgebra& a)
{
    const SpacePtr& g = a.generators.space;
    SparseMatrix d = a.generators.d.block(-1); // (F*)^{-1} -> (F*)^0
    const std::size_t n1 = g->dim(-1);
    GradedMap s(g, g, -1);
    if (n1 == 0)
        return s;
    MatrixSolve sol = solve_matrix(d.transpose(), SparseMatrix::identity(n1));
    if (!sol.consistent())
        return std::nullopt;
    s.set_block(0, sol.x->transpose());
    return s;
}

MollerCandidate moller_from_splitting(const CEAlgebra& a, const GradedMap& s)
{
    const SpacePtr& g = a.generators.space;
    for (int k : g->degrees())
        if (k != -1 && k != 0)
            throw NotTwoTerm("generators occupy degree " + std::to_string(k));
    if (s.shift() != -1 || !same_space(s.source(), g) || !same_space(s.target(), g))
        throw SplittingInvalid("splitting must be a degree -1 map on the generators");
    if (g->dim(-1) > 0) {
        SparseMatrix sd = s.block(0) * a.generators.d.block(-1);
        if (sd != SparseMatrix::identity(g->dim(-1)))
            throw SplittingInvalid("s delta0 is not the identity on degree -1 generators");
    }
    const GeneratorTable& gens = a.truncation().table();
    std::vector<GeneratorImages> images(static_cast<std::size_t>(a.max_order) + 1, GeneratorImages(gens.size()));
    for (std::uint32_t x = 0; x < gens.size(); ++x)
        images[0][x][Monomial{x}] = 1;
    const SparseMatrix sb = s.block(0); // rows: degree -1, cols: degree 0
    for (int n = 1; n <= a.max_order; ++n) {
        auto it = a.delta_generators.find(n);
        if (it == a.delta_generators.end())
            continue;
        for (std::size_t b = 0; b < sb.rows(); ++b)
            for (const auto& e : sb.row(b)) {
                const std::uint32_t phi = gens.index(0, e.index);
                const std::uint32_t psi = gens.index(-1, b);
                add_scaled(images[n][phi], it->second[psi], e.value);
            }
    }
    return algebra_candidate(a, std::move(images));
}

namespace {

struct BlockSystem {
    // unknown offsets per degree and equation offsets per degree
    std::map<int, std::size_t> x_offset, eq_offset;
    std::size_t unknowns = 0, equations = 0;
};

std::size_t dimw(const SymTruncation& t, int k, int w) { return t.dim(k, w); }

} // namespace

ObstructionReport obstruction_tower(const CEAlgebra& a, int max_order, int window)
{
    const SymTruncation& t = a.truncation();
    if (max_order > a.max_order || window + max_order > t.max_weight() || window < 0 || max_order < 0)
        throw DimensionMismatch("tower window exceeds the CE truncation");
    if (!mc_check(a).ok())
        throw MCFailed("the CE differential does not square to zero on the truncation");

    ObstructionReport rep;
    rep.window = window;
    rep.max_order = max_order;
    const std::vector<int> degrees = t.space()->degrees();
    const PartialMap d0(a.delta0);

    std::vector<PartialMap> K;
    K.push_back(identity_partial(t));
    restrict_window(K[0], t, window);

    for (int n = 1; n <= max_order; ++n) {
        OrderReport orep;
        orep.order = n;
        PartialMap R(GradedMap(t.space(), t.space(), 1));
        for (int j = 1; j <= n; ++j)
            R = R + compose(a.order(j), K[n - j]);
        R = scaled(R, Rational(-1));
        restrict_window(R, t, window);
        if (unknown_within(R, t, window) > 0) {
            orep.status = OrderStatus::OverflowLimited;
            rep.orders.push_back(std::move(orep));
            rep.verdict = TowerVerdict::Inconclusive;
            return rep;
        }
        // d(R) = delta0 R + R delta0 must vanish.
        PartialMap closed = compose(d0, R) + compose(R, d0);
        restrict_window(closed, t, window);
        orep.rhs_closed = zero_on_known(closed);

        std::map<int, SparseMatrix> kn;
        for (int k : degrees)
            kn.emplace(k, SparseMatrix(t.space()->dim(k), t.space()->dim(k)));

        for (int w = 0; w <= window && !orep.certificate; ++w) {
            for (int wt = w; wt <= std::min(w + n, t.max_weight()) && !orep.certificate; ++wt) {
                std::map<int, SparseMatrix> rhs;
                bool nonzero = false;
                for (int k : degrees) {
                    if (dimw(t, k, w) == 0 || dimw(t, k + 1, wt) == 0)
                        continue;
                    SparseMatrix b = weight_block(R.map, t, k, w, wt);
                    nonzero = nonzero || !b.is_zero();
                    rhs.emplace(k, std::move(b));
                }
                if (!nonzero) {
                    ++orep.blocks_skipped;
                    continue;
                }
                BlockSystem sys;
                for (int k : degrees) {
                    if (dimw(t, k, w) && dimw(t, k, wt)) {
                        sys.x_offset[k] = sys.unknowns;
                        sys.unknowns += dimw(t, k, wt) * dimw(t, k, w);
                    }
                    if (dimw(t, k, w) && dimw(t, k + 1, wt)) {
                        sys.eq_offset[k] = sys.equations;
                        sys.equations += dimw(t, k + 1, wt) * dimw(t, k, w);
                    }
                }
                std::vector<SparseVec> rows(sys.equations);
                auto put = [&](std::size_t row, std::size_t col, const Rational& v) {
                    rows[row].push_back({static_cast<std::uint32_t>(col), v});
                };
                for (const auto& [k, xoff] : sys.x_offset) {
                    const std::size_t na = dimw(t, k, wt), nb = dimw(t, k, w);
                    // +delta0_{wt}^{(k)}[a', a] at equation (k, a', b)
                    if (auto eq = sys.eq_offset.find(k); eq != sys.eq_offset.end()) {
                        SparseMatrix dk = weight_block(a.delta0, t, k, wt, wt);
                        for (std::size_t ap = 0; ap < dk.rows(); ++ap)
                            for (const auto& e : dk.row(ap))
                                for (std::size_t b = 0; b < nb; ++b)
                                    put(eq->second + ap * nb + b, xoff + e.index * nb + b, e.value);
                    }
                    // -delta0_w^{(k-1)}[b, b0] at equation (k-1, a, b0)
                    if (auto eq = sys.eq_offset.find(k - 1); eq != sys.eq_offset.end()) {
                        SparseMatrix dk = weight_block(a.delta0, t, k - 1, w, w);
                        const std::size_t nb0 = dimw(t, k - 1, w);
                        for (std::size_t b = 0; b < dk.rows(); ++b)
                            for (const auto& e : dk.row(b))
                                for (std::size_t aa = 0; aa < na; ++aa)
                                    put(eq->second + aa * nb0 + e.index, xoff + aa * nb + b, -e.value);
                    }
                }
                for (auto& r : rows)
                    std::sort(r.begin(), r.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
                SparseMatrix A = SparseMatrix::from_rows(sys.equations, sys.unknowns, std::move(rows));
                SparseMatrix B(sys.equations, 1);
                for (const auto& [k, b] : rhs) {
                    const std::size_t off = sys.eq_offset.at(k), nb = b.cols();
                    for (std::size_t ap = 0; ap < b.rows(); ++ap)
                        for (const auto& e : b.row(ap))
                            B.set(off + ap * nb + e.index, 0, e.value);
                }
                MatrixSolve sol = solve_matrix(A, B);
                if (sol.consistent()) {
                    ++orep.blocks_solved;
                    const SparseMatrix& x = *sol.x;
                    for (const auto& [k, xoff] : sys.x_offset) {
                        const std::size_t na = dimw(t, k, wt), nb = dimw(t, k, w);
                        SparseMatrix xk(na, nb);
                        for (std::size_t aa = 0; aa < na; ++aa)
                            for (std::size_t b = 0; b < nb; ++b) {
                                Rational v = x.at(xoff + aa * nb + b, 0);
                                if (!is_zero(v))
                                    xk.set(aa, b, v);
                            }
                        if (!xk.is_zero())
                            kn.at(k).add_block(t.weight_range(k, wt).first, t.weight_range(k, w).first, xk);
                    }
                    continue;
                }
                ObstructionCertificate cert;
                cert.source_weight = w;
                cert.target_weight = wt;
                cert.rhs = rhs;
                cert.pairing = dot(sol.certificate, B.transpose().row(0));
                std::optional<std::pair<int, std::size_t>> col;
                for (const auto& [k, eoff] : sys.eq_offset) {
                    const std::size_t nr = dimw(t, k + 1, wt), nb = dimw(t, k, w);
                    SparseMatrix f(nr, nb);
                    for (const auto& e : sol.certificate)
                        if (e.index >= eoff && e.index < eoff + nr * nb)
                            f.set((e.index - eoff) / nb, (e.index - eoff) % nb, e.value);
                    if (!col)
                        for (std::size_t b = 0; b < nb && !col; ++b) {
                            Rational s = 0;
                            for (std::size_t ap = 0; ap < nr; ++ap)
                                s += f.at(ap, b) * rhs.at(k).at(ap, b);
                            if (!is_zero(s))
                                col = std::make_pair(k, b);
                        }
                    cert.functional.emplace(k, std::move(f));
                }
                if (col)
                    cert.source_monomial = t.monomial(col->first, t.weight_range(col->first, w).first + col->second);
                orep.certificate = std::move(cert);
            }
        }
        if (orep.certificate) {
            orep.status = OrderStatus::Obstructed;
            rep.orders.push_back(std::move(orep));
            rep.verdict = TowerVerdict::ObstructedAtOrder;
            rep.obstructed_order = n;
            return rep;
        }
        GradedMap km(t.space(), t.space(), 0);
        for (auto& [k, m] : kn)
            if (!m.is_zero())
                km.set_block(k, std::move(m));
        orep.K = km;
        PartialMap kp(km);
        restrict_window(kp, t, window);
        K.push_back(std::move(kp));
        rep.orders.push_back(std::move(orep));
    }
    rep.verdict = TowerVerdict::ExistsUpTo;
    return rep;
}

MollerCandidate candidate_from_report(const CEAlgebra& a, const ObstructionReport& report)
{
    MollerCandidate c = identity_candidate(a);
    for (const auto& o : report.orders)
        if (o.status == OrderStatus::Solved)
            c.K.orders[o.order] = PartialMap(o.K);
    return c;
}

bool certificate_valid(const CEAlgebra& a, const ObstructionCertificate& c)
{
    const SymTruncation& t = a.truncation();
    const int w = c.source_weight, wt = c.target_weight;
    auto functional = [&](int k) {
        auto it = c.functional.find(k);
        if (it != c.functional.end())
            return it->second;
        return SparseMatrix(dimw(t, k + 1, wt), dimw(t, k, w));
    };
    for (int k : t.space()->degrees()) {
        if (!dimw(t, k, w) || !dimw(t, k, wt))
            continue;
        SparseMatrix lhs = weight_block(a.delta0, t, k, wt, wt).transpose() * functional(k);
        SparseMatrix rhs = functional(k - 1) * weight_block(a.delta0, t, k - 1, w, w).transpose();
        if (lhs != rhs)
            return false;
    }
    Rational pairing = 0;
    for (const auto& [k, f] : c.functional) {
        auto it = c.rhs.find(k);
        if (it == c.rhs.end())
            continue;
        for (std::size_t r = 0; r < f.rows(); ++r)
            pairing += dot(f.row(r), it->second.row(r));
    }
    return !is_zero(pairing) && pairing == c.pairing;
}

std::string to_string(TowerVerdict v)
{
    switch (v) {
    case TowerVerdict::ExistsUpTo: return "EXISTS-UP-TO";
    case TowerVerdict::ObstructedAtOrder: return "OBSTRUCTED-AT-ORDER";
    case TowerVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

std::string to_string(OrderStatus s)
{
    switch (s) {
    case OrderStatus::Solved: return "solved";
    case OrderStatus::Obstructed: return "obstructed";
    case OrderStatus::OverflowLimited: return "overflow-limited";
    }
    return "overflow-limited";
}

} // namespace moller
