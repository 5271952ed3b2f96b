#include "moller/models.hpp"

namespace moller {

namespace {

SparseMatrix incidence(int n)
{
    SparseMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        d.add_to(i, (i + 1) % n, Rational(1));
        d.add_to(i, i, Rational(-1));
    }
    return d;
}

// a (x) id_m with row/column index outer * m + inner.
SparseMatrix tensor_identity(const SparseMatrix& a, std::size_t m)
{
    SparseMatrix out(a.rows() * m, a.cols() * m);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (const auto& e : a.row(r))
            for (std::size_t k = 0; k < m; ++k)
                out.set(r * m + k, e.index * m + k, e.value);
    return out;
}

std::string harmonic_label(const SparseVec& v, const std::vector<std::string>& labels)
{
    return "[" + labels[v.back().index] + "]";
}

} // namespace

CochainComplex circle_complex(int n)
{
    if (n < 3)
        throw TooFewVertices("a simplicial circle needs at least 3 vertices, got " + std::to_string(n));
    std::vector<std::string> v, e;
    for (int i = 0; i < n; ++i) {
        v.push_back("v" + std::to_string(i));
        e.push_back("e" + std::to_string(i));
    }
    SpacePtr s = make_space({{0, v}, {1, e}});
    GradedMap d(s, s, 1);
    d.set_block(0, incidence(n));
    return CochainComplex(s, d);
}

CochainComplex circle_complex(const SimplicialCircle& c) { return circle_complex(c.n); }

CochainComplex disjoint_circles(const std::vector<int>& sizes)
{
    std::vector<std::string> v, e;
    std::size_t total = 0;
    for (int n : sizes) {
        if (n < 3)
            throw TooFewVertices("a simplicial circle needs at least 3 vertices, got " + std::to_string(n));
        total += static_cast<std::size_t>(n);
    }
    SparseMatrix d(total, total);
    std::size_t offset = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        const std::string prefix = "S" + std::to_string(c) + ".";
        for (int i = 0; i < sizes[c]; ++i) {
            v.push_back(prefix + "v" + std::to_string(i));
            e.push_back(prefix + "e" + std::to_string(i));
        }
        d.add_block(offset, offset, incidence(sizes[c]));
        offset += static_cast<std::size_t>(sizes[c]);
    }
    SpacePtr s = make_space({{0, v}, {1, e}});
    GradedMap dm(s, s, 1);
    dm.set_block(0, d);
    return CochainComplex(s, dm);
}

HodgeData hodge_data(const CochainComplex& c, const std::map<int, SparseMatrix>& gram)
{
    HodgeData hd;
    hd.complex = c;
    const SpacePtr& s = c.space;
    for (int k : s->degrees()) {
        auto it = gram.find(k);
        SparseMatrix g = it != gram.end() ? it->second : SparseMatrix::identity(s->dim(k));
        if (g.rows() != s->dim(k) || g.cols() != s->dim(k) || g != g.transpose())
            throw ShapeMismatch("Gram form in degree " + std::to_string(k) + " must be square and symmetric");
        hd.gram[k] = std::move(g);
    }
    auto gram_of = [&](int k) {
        auto it = hd.gram.find(k);
        return it != hd.gram.end() ? it->second : SparseMatrix(0, 0);
    };

    for (int k : s->degrees()) {
        if (s->dim(k + 1) == 0)
            continue;
        // <d x, y>_{k+1} = <x, d* y>_k
        hd.adjoint[k] = inverse(gram_of(k)) * c.d.block(k).transpose() * gram_of(k + 1);
    }
    auto adj = [&](int k) {
        auto it = hd.adjoint.find(k);
        return it != hd.adjoint.end() ? it->second : SparseMatrix(s->dim(k), s->dim(k + 1));
    };

    // Harmonic labels are collected per degree before the small space exists.
    std::map<int, std::vector<std::string>> small_labels;
    for (int k : s->degrees()) {
        const std::size_t n = s->dim(k);
        SparseMatrix lap = adj(k) * c.d.block(k) + c.d.block(k - 1) * adj(k - 1);
        SparseMatrix b = kernel_basis(lap);
        const SparseMatrix& g = hd.gram[k];
        SparseMatrix p = b.cols() ? inverse(b.transpose() * g * b) * b.transpose() * g : SparseMatrix(0, n);
        SparseMatrix ip = b * p;
        hd.green[k] = inverse(lap + ip) - ip;
        hd.laplacian[k] = std::move(lap);
        for (const auto& col : b.columns())
            small_labels[k].push_back(harmonic_label(col, s->labels(k)));
        make_labels_unique(small_labels[k]);
        hd.harmonic[k] = std::move(b);
        hd.projector[k] = std::move(p);
    }

    SpacePtr small = make_space(small_labels);
    DeformationRetract& r = hd.retract;
    r.big = c;
    r.small = CochainComplex::zero_differential(small);
    r.i = GradedMap(small, s, 0);
    r.p = GradedMap(s, small, 0);
    r.h = GradedMap(s, s, -1);
    for (int k : s->degrees()) {
        if (small->dim(k)) {
            r.i.set_block(k, hd.harmonic[k]);
            r.p.set_block(k, hd.projector[k]);
        }
        if (s->dim(k - 1))
            r.h.set_block(k, -(hd.green[k - 1] * adj(k - 1)));
    }
    r.h.prune();
    require_retract(r);
    return hd;
}

DeformationRetract hodge_retract(const CochainComplex& c) { return hodge_data(c).retract; }

LieAlgebra sl2()
{
    LieAlgebra g = LieAlgebra::zero({"e", "f", "h"});
    g.set(2, 0, 0, Rational(2));
    g.set(2, 1, 1, Rational(-2));
    g.set(0, 1, 2, Rational(1));
    return g;
}

LieAlgebra abelian(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back("x" + std::to_string(i + 1));
    return LieAlgebra::zero(labels);
}

LieAlgebra mutated(const LieAlgebra& g, std::size_t i, std::size_t j, std::size_t k, const Rational& c)
{
    if (i >= g.dim() || j >= g.dim() || k >= g.dim() || i == j)
        throw DimensionMismatch("mutation index out of range");
    LieAlgebra m = g;
    m.set(i, j, k, c);
    return m;
}

KGModel kg_toy(std::size_t k, const SparseMatrix& d, int n)
{
    if (d.rows() != k || d.cols() != k)
        throw ShapeMismatch("d must be " + std::to_string(k) + " x " + std::to_string(k));
    if (n < 2)
        throw DimensionMismatch("interaction order N must be at least 2");
    std::vector<std::string> phi, anti;
    for (std::size_t i = 0; i < k; ++i) {
        const std::string tag = k == 1 ? "" : std::to_string(i + 1);
        phi.push_back("φ" + tag);
        anti.push_back("φ‡" + tag);
    }
    SpacePtr s = make_space({{0, phi}, {1, anti}});
    GradedMap dm(s, s, 1);
    dm.set_block(0, d);
    dm.prune();

    KGModel m;
    m.points = k;
    m.n = n;
    m.surjective = rank(d) == k;
    const int arity = n - 1;
    m.structure = LInftyStructure(CochainComplex(s, dm), std::max(arity, 1));
    if (arity == 1) {
        GradedMap lin(s, s, 1);
        lin.set_block(0, SparseMatrix::identity(k));
        m.structure.set_linear_perturbation(std::move(lin));
        return m;
    }
    const SymPower& pw = m.structure.power(arity);
    const GeneratorTable& gens = pw.table();
    GradedMap l(pw.space(), s, 1);
    SparseMatrix blk(k, pw.space()->dim(0));
    const auto& monos = pw.monomials(0);
    for (std::size_t col = 0; col < monos.size(); ++col) {
        const Monomial& mono = monos[col];
        if (mono.front() == mono.back())
            blk.set(gens.position(mono.front()), col, Rational(1));
    }
    l.set_block(0, std::move(blk));
    m.structure.set_bracket(arity, std::move(l));
    return m;
}

CSModel cs_model(const LieAlgebra& g, CSVariant variant, std::size_t acyclic_pairs)
{
    if (!g.antisymmetric() || !g.jacobi())
        throw JacobiFailed("structure constants violate antisymmetry or the Jacobi identity");
    CSModel m;
    m.algebra = g;
    m.variant = variant;
    m.acyclic_pairs = variant == CSVariant::Inflated ? acyclic_pairs : 0;

    std::vector<std::string> ghosts, fields;
    for (const auto& x : g.labels) {
        ghosts.push_back("c_" + x);
        fields.push_back("A_" + x);
    }
    SpacePtr small = make_space({{-1, ghosts}, {0, fields}});
    m.minimal = LInftyStructure(CochainComplex::zero_differential(small), 2);
    m.minimal.set_bracket(2, shifted_lie_bracket(g, m.minimal.power(2)));

    if (variant == CSVariant::Minimal) {
        m.structure = m.minimal;
        m.retract = identity_retract(m.minimal.complex());
        JacobiReport jr = check_jacobi(m.structure, 3);
        if (!jr.ok())
            throw JacobiFailed("shifted bracket fails the homotopy Jacobi identity");
        return m;
    }

    std::map<int, std::vector<std::string>> comps{{-1, ghosts}, {0, fields}};
    struct Pair {
        int degree;
        std::size_t a, b;
        Rational alpha;
    };
    std::vector<Pair> pairs;
    for (std::size_t j = 0; j < acyclic_pairs; ++j) {
        const int deg = j % 2 == 0 ? -1 : 0;
        comps[deg].push_back("a" + std::to_string(j));
        comps[deg + 1].push_back("b" + std::to_string(j));
        pairs.push_back({deg, comps[deg].size() - 1, comps[deg + 1].size() - 1, Rational(static_cast<long>(j + 1))});
    }
    SpacePtr big = make_space(comps);
    GradedMap d(big, big, 1), i(small, big, 0), p(big, small, 0), h(big, big, -1);
    for (int deg : {-1, 0}) {
        const std::size_t n = g.dim();
        SparseMatrix inc(big->dim(deg), n), proj(n, big->dim(deg));
        for (std::size_t q = 0; q < n; ++q) {
            inc.set(q, q, Rational(1));
            proj.set(q, q, Rational(1));
        }
        i.set_block(deg, inc);
        p.set_block(deg, proj);
    }
    for (const auto& pr : pairs) {
        SparseMatrix dd = d.block(pr.degree);
        dd.set(pr.b, pr.a, pr.alpha);
        d.set_block(pr.degree, dd);
        SparseMatrix hh = h.block(pr.degree + 1);
        hh.set(pr.a, pr.b, -1 / pr.alpha);
        h.set_block(pr.degree + 1, hh);
    }
    d.prune();
    h.prune();
    m.retract.big = CochainComplex(big, d);
    m.retract.small = m.minimal.complex();
    m.retract.i = i;
    m.retract.p = p;
    m.retract.h = h;
    m.structure = dgla_from_retract(m.retract, m.minimal);
    return m;
}

YMModel ym_initial_data_model(const SimplicialCircle& circle, const LieAlgebra& g)
{
    const int n = circle.n;
    if (n < 3)
        throw TooFewVertices("a simplicial circle needs at least 3 vertices, got " + std::to_string(n));
    const SparseMatrix inc = incidence(n);
    const std::size_t m = g.dim();
    std::vector<std::string> ghosts, fields, top;
    for (int v = 0; v < n; ++v)
        for (const auto& a : g.labels)
            ghosts.push_back("c_" + a + "@v" + std::to_string(v));
    for (int e = 0; e < n; ++e)
        for (const auto& a : g.labels)
            fields.push_back("A_" + a + "@e" + std::to_string(e));
    for (int v = 0; v < n; ++v)
        for (const auto& a : g.labels)
            fields.push_back("E_" + a + "@v" + std::to_string(v));
    for (int e = 0; e < n; ++e)
        for (const auto& a : g.labels)
            top.push_back("B_" + a + "@e" + std::to_string(e));
    SpacePtr s = make_space({{-1, ghosts}, {0, fields}, {1, top}});

    const SparseMatrix dg = tensor_identity(inc, m);
    const std::size_t nm = static_cast<std::size_t>(n) * m;
    SparseMatrix d_ghost(2 * nm, nm), d_field(nm, 2 * nm);
    d_ghost.add_block(0, 0, dg);
    d_field.add_block(0, nm, dg);
    GradedMap d(s, s, 1);
    d.set_block(-1, d_ghost);
    d.set_block(0, d_field);

    YMModel ym;
    ym.algebra = g;
    ym.vertices = n;
    ym.structure = LInftyStructure(CochainComplex(s, d), 2);
    const SymPower& pw = ym.structure.power(2);
    const GeneratorTable& gens = pw.table();
    GradedMap l(pw.space(), s, 1);
    SparseMatrix blk(nm, pw.space()->dim(-2));
    const auto& monos = pw.monomials(-2);
    for (std::size_t col = 0; col < monos.size(); ++col) {
        const std::size_t x = gens.position(monos[col][0]), y = gens.position(monos[col][1]);
        const std::size_t v = x / m;
        if (y / m != v)
            continue;
        for (const auto& e : g.bracket(x % m, y % m))
            blk.set(v * m + e.index, col, -e.value);
    }
    l.set_block(-2, std::move(blk));
    l.prune();
    ym.structure.set_bracket(2, std::move(l));
    ym.retract = hodge_retract(ym.structure.complex());
    return ym;
}

} // namespace moller
