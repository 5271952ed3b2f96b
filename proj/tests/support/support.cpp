#include "support.hpp"

#include <algorithm>
#include <functional>

namespace moller::testing {

SparseMatrix dense(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<std::vector<Rational>> d;
    for (const auto& r : rows) {
        d.emplace_back();
        for (long v : r)
            d.back().emplace_back(v);
    }
    return SparseMatrix::from_dense(d);
}

Rational random_rational(std::mt19937& rng, int range, int den)
{
    std::uniform_int_distribution<int> num(-range, range), dd(1, den);
    return make_rational(num(rng), dd(rng));
}

SparseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density)
{
    std::bernoulli_distribution keep(density);
    SparseMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng))
                m.set(r, c, random_rational(rng));
    return m;
}

SparseMatrix random_invertible(std::mt19937& rng, std::size_t n)
{
    SparseMatrix l = SparseMatrix::identity(n), u(n, n);
    std::uniform_int_distribution<int> pick(1, 3);
    std::bernoulli_distribution neg(0.5), keep(0.5);
    for (std::size_t r = 0; r < n; ++r) {
        u.set(r, r, Rational(neg(rng) ? -pick(rng) : pick(rng)));
        for (std::size_t c = 0; c < n; ++c) {
            if (c < r && keep(rng))
                l.set(r, c, random_rational(rng, 2, 1));
            if (c > r && keep(rng))
                u.set(r, c, random_rational(rng, 2, 2));
        }
    }
    return l * u;
}

CochainComplex random_complex(std::mt19937& rng, std::size_t max_dim, int lo, int hi)
{
    std::uniform_int_distribution<int> small(0, 3);
    std::map<int, std::size_t> harmonic, pairs; // pairs[k]: pairs between k and k+1
    std::size_t total = 0;
    auto budget = [&](std::size_t want, std::size_t cost) {
        while (want > 0 && total + want * cost > max_dim)
            --want;
        total += want * cost;
        return want;
    };
    for (int k = lo; k <= hi; ++k) {
        harmonic[k] = budget(static_cast<std::size_t>(small(rng)), 1);
        if (k < hi)
            pairs[k] = budget(static_cast<std::size_t>(small(rng)), 2);
    }
    std::map<int, std::vector<std::string>> comps;
    std::map<int, std::size_t> src_offset, dst_offset;
    for (int k = lo; k <= hi; ++k) {
        const std::size_t incoming = k > lo ? pairs[k - 1] : 0;
        const std::size_t n = harmonic[k] + incoming + pairs[k];
        dst_offset[k] = harmonic[k];
        src_offset[k] = harmonic[k] + incoming;
        for (std::size_t i = 0; i < n; ++i)
            comps[k].push_back("u" + std::to_string(k - lo) + "." + std::to_string(i));
    }
    SpacePtr s = make_space(comps);
    std::map<int, SparseMatrix> t;
    for (int k : s->degrees())
        t[k] = random_invertible(rng, s->dim(k));
    GradedMap d(s, s, 1);
    for (int k = lo; k < hi; ++k) {
        if (pairs[k] == 0)
            continue;
        SparseMatrix m(s->dim(k + 1), s->dim(k));
        for (std::size_t j = 0; j < pairs[k]; ++j) {
            Rational a = random_rational(rng, 3, 2);
            if (a == 0)
                a = 1;
            m.set(dst_offset[k + 1] + j, src_offset[k] + j, a);
        }
        d.set_block(k, t[k + 1] * m * inverse(t[k]));
    }
    return CochainComplex(s, d);
}

std::map<int, SparseMatrix> random_gram(std::mt19937& rng, const SpacePtr& s)
{
    std::map<int, SparseMatrix> g;
    for (int k : s->degrees()) {
        SparseMatrix b = random_matrix(rng, s->dim(k), s->dim(k), 0.4);
        g[k] = b.transpose() * b + SparseMatrix::identity(s->dim(k));
    }
    return g;
}

namespace {

using Dense = std::vector<std::vector<Rational>>;

std::size_t dense_rank(Dense m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

using Exponent = std::vector<int>;

std::vector<Exponent> exponents(std::size_t n, int m)
{
    std::vector<Exponent> out;
    Exponent e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == n) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            rec(i + 1, left - a);
        }
    };
    if (n == 0) {
        if (m == 0)
            out.push_back(e);
        return out;
    }
    rec(0, m);
    return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, int q)
{
    std::vector<std::vector<std::size_t>> out;
    if (q < 0 || static_cast<std::size_t>(q) > n)
        return out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == static_cast<std::size_t>(q)) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Coadjoint action x_i on the polynomial y^alpha: x_i . y_a = -sum_b c^a_{ib} y_b.
std::map<Exponent, Rational> act(const LieAlgebra& g, std::size_t i, const Exponent& alpha)
{
    std::map<Exponent, Rational> out;
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        if (alpha[a] == 0)
            continue;
        for (std::size_t b = 0; b < g.dim(); ++b) {
            Rational c = g.constant(i, b, a);
            if (c == 0)
                continue;
            Exponent e = alpha;
            e[a] -= 1;
            e[b] += 1;
            out[e] -= c * alpha[a];
        }
    }
    return out;
}

// Matrix of the CE differential C^q -> C^{q+1} with coefficients in Sym^m g*.
Dense ce_matrix(const LieAlgebra& g, int q, int m)
{
    const std::size_t n = g.dim();
    auto src_sets = subsets(n, q), dst_sets = subsets(n, q + 1);
    auto ex = exponents(n, m);
    std::map<Exponent, std::size_t> ex_index;
    for (std::size_t i = 0; i < ex.size(); ++i)
        ex_index[ex[i]] = i;
    std::map<std::vector<std::size_t>, std::size_t> src_index;
    for (std::size_t i = 0; i < src_sets.size(); ++i)
        src_index[src_sets[i]] = i;
    Dense out(dst_sets.size() * ex.size(), std::vector<Rational>(src_sets.size() * ex.size()));
    auto add = [&](std::size_t row_set, const Exponent& row_ex, std::size_t col_set, std::size_t col_ex,
                   const Rational& v) {
        out[row_set * ex.size() + ex_index.at(row_ex)][col_set * ex.size() + col_ex] += v;
    };
    for (std::size_t ks = 0; ks < dst_sets.size(); ++ks) {
        const auto& k = dst_sets[ks];
        for (std::size_t e = 0; e < ex.size(); ++e) {
            // first term: (-1)^s x_{k_s} . omega(k without k_s)
            for (std::size_t s = 0; s < k.size(); ++s) {
                std::vector<std::size_t> rest = k;
                rest.erase(rest.begin() + static_cast<long>(s));
                const std::size_t col = src_index.at(rest);
                const Rational sign = s % 2 ? -1 : 1;
                for (const auto& [re, v] : act(g, k[s], ex[e]))
                    add(ks, re, col, e, sign * v);
            }
            // second term: (-1)^{s+t} omega([x_s, x_t], rest)
            for (std::size_t s = 0; s < k.size(); ++s)
                for (std::size_t t = s + 1; t < k.size(); ++t) {
                    std::vector<std::size_t> rest;
                    for (std::size_t u = 0; u < k.size(); ++u)
                        if (u != s && u != t)
                            rest.push_back(k[u]);
                    const Rational sign = (s + t) % 2 ? -1 : 1;
                    for (const auto& entry : g.bracket(k[s], k[t])) {
                        if (std::find(rest.begin(), rest.end(), entry.index) != rest.end())
                            continue;
                        std::vector<std::size_t> word{entry.index};
                        word.insert(word.end(), rest.begin(), rest.end());
                        int swaps = 0;
                        for (std::size_t a = 0; a + 1 < word.size() && word[a] > word[a + 1]; ++a) {
                            std::swap(word[a], word[a + 1]);
                            ++swaps;
                        }
                        const Rational perm = swaps % 2 ? -1 : 1;
                        add(ks, ex[e], src_index.at(word), e, sign * perm * entry.value);
                    }
                }
        }
    }
    return out;
}

} // namespace

std::size_t lie_cohomology_dim(const LieAlgebra& g, int q, int m)
{
    const std::size_t n = g.dim();
    const std::size_t cq = subsets(n, q).size() * exponents(n, m).size();
    if (cq == 0)
        return 0;
    const std::size_t out_rank = dense_rank(ce_matrix(g, q, m));
    const std::size_t in_rank = q > 0 ? dense_rank(ce_matrix(g, q - 1, m)) : 0;
    return cq - out_rank - in_rank;
}

std::size_t coadjoint_invariants(const LieAlgebra& g, int w)
{
    auto ex = exponents(g.dim(), w);
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < ex.size(); ++i)
        index[ex[i]] = i;
    Dense stacked;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        Dense block(ex.size(), std::vector<Rational>(ex.size()));
        for (std::size_t c = 0; c < ex.size(); ++c)
            for (const auto& [e, v] : act(g, i, ex[c]))
                block[index.at(e)][c] += v;
        stacked.insert(stacked.end(), block.begin(), block.end());
    }
    return ex.size() - dense_rank(stacked);
}

LInftyStructure conjugated_structure(std::mt19937& rng, const LInftyStructure& l, int arity)
{
    const int top = arity - 1;
    CEAlgebra a = build_ce(l, 1, top);
    const SymTruncation& t = a.truncation();
    const GeneratorTable& gens = t.table();
    SpacePtr dual = a.generators.space;

    SymPower two(dual, 2);
    std::bernoulli_distribution keep(0.5);
    std::vector<GeneratorImages> phi(2, GeneratorImages(gens.size()));
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
        phi[0][g][Monomial{g}] = 1;
        for (const auto& m : two.monomials(gens.degree(g)))
            if (keep(rng))
                add_term(phi[1][g], m, random_rational(rng, 2, 2));
    }
    FormalGradedMap f = extend_algebra_map(phi, t, top);
    std::vector<PartialMap> inv{PartialMap(identity_map(t.space()))};
    for (int n = 1; n <= top; ++n) {
        PartialMap acc(GradedMap(t.space(), t.space(), 0));
        for (int j = 1; j <= n; ++j)
            acc = acc + compose(f.order(j), inv[n - j]);
        inv.push_back(scaled(acc, Rational(-1)));
    }

    LInftyStructure out(l.complex(), arity);
    for (int n = 1; n <= top; ++n) {
        PartialMap dn(GradedMap(t.space(), t.space(), 1));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                dn = dn + compose(f.order(i), compose(a.order(j), inv[n - i - j]));
        SymPower target(dual, n + 1);
        GradedMap gm(dual, target.space(), 1);
        for (const auto& [k, labels] : dual->components()) {
            if (target.space()->dim(k + 1) == 0)
                continue;
            SparseMatrix blk(target.space()->dim(k + 1), labels.size());
            for (std::size_t pos = 0; pos < labels.size(); ++pos) {
                auto loc = t.find(Monomial{gens.index(k, pos)});
                const SparseMatrix* col = dn.map.find_block(loc->first);
                if (!col)
                    continue;
                SparseVec v;
                for (std::size_t r = 0; r < col->rows(); ++r)
                    if (Rational x = col->at(r, loc->second); x != 0)
                        v.push_back({static_cast<std::uint32_t>(r), x});
                for (const auto& [mono, c] : t.polynomial(k + 1, v)) {
                    auto tl = target.find(mono);
                    if (!tl)
                        throw InvalidMonomial("conjugated image is not of pure weight");
                    blk.set(tl->second, pos, c);
                }
            }
            gm.set_block(k, std::move(blk));
        }
        gm.prune();
        GradedMap ln = undualize_bracket(gm, out.power(n + 1), target);
        if (!ln.is_zero())
            out.set_bracket(n + 1, std::move(ln));
    }
    return out;
}

LieAlgebra random_lie_algebra(std::mt19937& rng)
{
    std::uniform_int_distribution<int> kind(0, 3);
    LieAlgebra base;
    switch (kind(rng)) {
    case 0:
        base = sl2();
        break;
    case 1: {
        base = LieAlgebra::zero({"e", "f", "h", "z"});
        LieAlgebra s = sl2();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                for (const auto& e : s.bracket(i, j))
                    base.structure[i][j].push_back(e);
        break;
    }
    case 2:
        base = LieAlgebra::zero({"x", "y", "z"});
        base.set(0, 1, 2, Rational(1)); // Heisenberg
        break;
    default:
        base = abelian(2);
        break;
    }
    const std::size_t n = base.dim();
    SparseMatrix tm = random_invertible(rng, n), ti = inverse(tm);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back("y" + std::to_string(i + 1));
    LieAlgebra g = LieAlgebra::zero(labels);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Rational> acc(n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    Rational w = tm.at(a, i) * tm.at(b, j);
                    if (w == 0)
                        continue;
                    for (const auto& e : base.bracket(a, b))
                        for (std::size_t l = 0; l < n; ++l)
                            acc[l] += w * e.value * ti.at(l, e.index);
                }
            for (std::size_t l = 0; l < n; ++l)
                if (acc[l] != 0)
                    g.set(i, j, l, acc[l]);
        }
    return g;
}

} // namespace moller::testing

namespace moller::testing {

RandomModel random_tower_model(std::mt19937& rng)
{
    std::uniform_int_distribution<int> kind(0, 3);
    switch (kind(rng)) {
    case 0: {
        std::uniform_int_distribution<int> kd(1, 2), nd(2, 4);
        const int k = kd(rng), n = nd(rng);
        SparseMatrix d = random_matrix(rng, k, k, 0.7);
        return {"kg k=" + std::to_string(k) + " N=" + std::to_string(n), kg_toy(k, d, n).structure};
    }
    case 1:
        return {"cs minimal", cs_model(random_lie_algebra(rng), CSVariant::Minimal).structure};
    case 2:
        return {"cs inflated", cs_model(random_lie_algebra(rng), CSVariant::Inflated, 1).structure};
    default: {
        std::bernoulli_distribution which(0.5);
        LInftyStructure base = which(rng) ? kg_toy(1, SparseMatrix::identity(1).scaled(random_rational(rng, 3, 1)), 3).structure
                                          : cs_model(random_lie_algebra(rng), CSVariant::Minimal).structure;
        return {"conjugated", conjugated_structure(rng, base, 3)};
    }
    }
}

} // namespace moller::testing

namespace moller::testing {

RetractCase retract_case(std::mt19937& rng, std::size_t max_dim)
{
    RetractCase out;
    CochainComplex c = random_complex(rng, max_dim);
    out.total_dim = c.space->total_dim();

    DeformationRetract coh = retract_to_cohomology(c);
    out.cohomology = check_retract(coh).ok();

    HodgeData hd = hodge_data(c, random_gram(rng, c.space));
    out.hodge = check_retract(hd.retract).ok();
    out.hodge_green = true;
    for (int k : c.space->degrees()) {
        const SparseMatrix& lap = hd.laplacian.at(k);
        const SparseMatrix id = SparseMatrix::identity(lap.rows());
        const SparseMatrix ip = hd.harmonic.at(k) * hd.projector.at(k);
        out.hodge_green = out.hodge_green && hd.green.at(k) * lap == id - ip && lap * hd.green.at(k) == id - ip;
        const SparseMatrix* d = c.d.find_block(k);
        if (d && hd.green.count(k + 1))
            out.hodge_green = out.hodge_green && hd.green.at(k + 1) * *d == *d * hd.green.at(k);
    }

    // cancel the first nonzero entry of d, then retract the rest onto cohomology
    out.composed = true;
    for (int k : c.space->degrees()) {
        const SparseMatrix* d = c.d.find_block(k);
        if (!d)
            continue;
        bool done = false;
        for (std::size_t row = 0; row < d->rows() && !done; ++row)
            if (!d->row(row).empty()) {
                DeformationRetract outer = cancel_pair(c, k, row, d->row(row).front().index);
                DeformationRetract inner = retract_to_cohomology(outer.small);
                out.composed = check_retract(compose_retracts(outer, inner)).ok() &&
                               check_retract(compose_retracts(outer, inner, true)).side_conditions();
                done = true;
            }
        if (done)
            break;
    }

    const int weight = out.total_dim <= 10 ? 3 : 2;
    out.sym = check_retract(sym_lift_retract(coh, weight).retract).ok() &&
              check_retract(sym_lift_retract(hd.retract, 2).retract).ok();
    return out;
}

} // namespace moller::testing

namespace moller::testing {

StabilityCase tower_stability(const LInftyStructure& l, int window, int order)
{
    StabilityCase out;
    out.low = obstruction_tower(build_ce(l, window, order), order, window);
    out.high = obstruction_tower(build_ce(l, window + 2, order), order, window + 2);
    out.same_verdict = out.low.verdict == out.high.verdict;
    out.same_order = out.low.obstructed_order == out.high.obstructed_order;
    out.certificates_clean = true;
    for (const auto* r : {&out.low, &out.high})
        for (const auto& o : r->orders)
            if (o.status == OrderStatus::Solved && o.certificate)
                out.certificates_clean = false;
    return out;
}

} // namespace moller::testing
