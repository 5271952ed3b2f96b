#include "moller/linfty.hpp"

#include <algorithm>

namespace moller {

Rational LieAlgebra::constant(std::size_t i, std::size_t j, std::size_t k) const
{
    return coefficient(structure[i][j], static_cast<std::uint32_t>(k));
}

LieAlgebra LieAlgebra::zero(std::vector<std::string> labels)
{
    LieAlgebra g;
    const std::size_t n = labels.size();
    g.labels = std::move(labels);
    g.structure.assign(n, std::vector<SparseVec>(n));
    return g;
}

void LieAlgebra::set(std::size_t i, std::size_t j, std::size_t k, const Rational& c)
{
    if (i >= dim() || j >= dim() || k >= dim())
        throw DimensionMismatch("structure constant index out of range");
    auto put = [&](SparseVec& v, const Rational& x) {
        SparseVec e{{static_cast<std::uint32_t>(k), x - coefficient(v, static_cast<std::uint32_t>(k))}};
        axpy(v, Rational(1), e);
    };
    put(structure[i][j], c);
    if (i != j)
        put(structure[j][i], -c);
}

bool LieAlgebra::antisymmetric() const
{
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            SparseVec s = add(structure[i][j], structure[j][i]);
            if (!s.empty())
                return false;
        }
    return true;
}

bool LieAlgebra::jacobi() const
{
    const std::size_t n = dim();
    // [x,[y,z]] as a vector
    auto nested = [&](std::size_t x, std::size_t y, std::size_t z) {
        SparseVec out;
        for (const auto& e : structure[y][z])
            axpy(out, e.value, structure[x][e.index]);
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                SparseVec s = nested(i, j, k);
                axpy(s, Rational(1), nested(j, k, i));
                axpy(s, Rational(1), nested(k, i, j));
                if (!s.empty())
                    return false;
            }
    return true;
}

bool LieAlgebra::abelian() const
{
    for (const auto& row : structure)
        for (const auto& v : row)
            if (!v.empty())
                return false;
    return true;
}

LInftyStructure::LInftyStructure(CochainComplex complex, int max_arity)
    : complex_(std::move(complex)), max_arity_(max_arity)
{
    if (max_arity < 1)
        throw DimensionMismatch("maximum arity must be at least 1");
    for (int n = 1; n <= max_arity; ++n)
        powers_.emplace(n, std::make_shared<const SymPower>(complex_.space, n));
}

const SymPower& LInftyStructure::power(int n) const
{
    auto it = powers_.find(n);
    if (it == powers_.end())
        throw DimensionMismatch("arity " + std::to_string(n) + " exceeds the declared maximum");
    return *it->second;
}

GradedMap LInftyStructure::bracket(int n) const
{
    if (n == 1)
        return complex_.d;
    auto it = brackets_.find(n);
    if (it != brackets_.end())
        return it->second;
    return GradedMap(power(n).space(), complex_.space, 1);
}

void LInftyStructure::set_bracket(int n, GradedMap l)
{
    if (n < 2)
        throw DimensionMismatch("brackets of arity below 2 are the differential or the linear term");
    const SymPower& p = power(n);
    if (l.shift() != 1 || !same_space(l.source(), p.space()) || !same_space(l.target(), complex_.space))
        throw ShapeMismatch("bracket of arity " + std::to_string(n) + " has the wrong shape");
    brackets_.insert_or_assign(n, std::move(l));
}

void LInftyStructure::set_linear_perturbation(GradedMap l)
{
    if (l.shift() != 1 || !same_space(l.source(), complex_.space) || !same_space(l.target(), complex_.space))
        throw ShapeMismatch("linear term must be a degree-1 endomorphism");
    linear_ = std::move(l);
}

int LInftyStructure::max_order() const
{
    int o = linear_ ? 1 : 0;
    for (const auto& [n, l] : brackets_)
        if (!l.is_zero())
            o = std::max(o, n - 1);
    return o;
}

bool JacobiReport::ok() const
{
    return std::all_of(arities.begin(), arities.end(), [](const JacobiResult& r) { return r.holds; });
}

namespace {

struct Term {
    int arity;
    int order;
    GradedMap map;
};

std::vector<Term> terms_of(const LInftyStructure& l)
{
    std::vector<Term> t;
    t.push_back({1, 0, l.complex().d});
    if (l.linear_perturbation())
        t.push_back({1, 1, *l.linear_perturbation()});
    for (int n = 2; n <= l.max_arity(); ++n)
        if (l.has_bracket(n))
            t.push_back({n, n - 1, l.bracket(n)});
    return t;
}

// Calls f(subset) for every increasing subset of {0..n-1} of size k.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

JacobiReport check_jacobi(const LInftyStructure& l, int up_to_arity)
{
    JacobiReport report;
    const auto terms = terms_of(l);
    const GeneratorTable& gens = l.power(1).table();
    for (int n = 1; n <= up_to_arity; ++n) {
        JacobiResult res;
        res.arity = n;
        SymPower inputs(l.space(), n);
        bool failed = false;
        for (const auto& [deg, labels] : inputs.space()->components()) {
            const auto& monos = inputs.monomials(deg);
            for (std::size_t mi = 0; mi < monos.size() && !failed; ++mi) {
                const Monomial& m = monos[mi];
                std::vector<int> degrees;
                for (auto g : m)
                    degrees.push_back(gens.degree(g));
                std::map<int, std::map<std::uint32_t, Rational>> value; // order -> output coordinates
                const int out_degree = deg + 2;
                for (const Term& inner : terms) {
                    const auto j = static_cast<std::size_t>(inner.arity);
                    if (j > m.size())
                        continue;
                    for (const Term& outer : terms) {
                        if (outer.arity + inner.arity - 1 != n)
                            continue;
                        const SymPower& inner_power = l.power(inner.arity);
                        const SymPower& outer_power = l.power(outer.arity);
                        for_each_subset(m.size(), j, [&](const std::vector<std::size_t>& subset) {
                            std::vector<std::size_t> perm(subset);
                            std::vector<char> used(m.size(), 0);
                            for (auto s : subset)
                                used[s] = 1;
                            for (std::size_t s = 0; s < m.size(); ++s)
                                if (!used[s])
                                    perm.push_back(s);
                            const int eps = koszul_sign(perm, degrees);
                            std::vector<std::uint32_t> in;
                            for (std::size_t s = 0; s < j; ++s)
                                in.push_back(m[perm[s]]);
                            int td = 0;
                            SparseVec first = evaluate_bracket(inner.map, inner_power, in, td);
                            for (const auto& e : first) {
                                std::vector<std::uint32_t> in2{gens.index(td, e.index)};
                                for (std::size_t s = j; s < perm.size(); ++s)
                                    in2.push_back(m[perm[s]]);
                                int td2 = 0;
                                SparseVec second = evaluate_bracket(outer.map, outer_power, in2, td2);
                                auto& acc = value[inner.order + outer.order];
                                for (const auto& f : second) {
                                    Rational c = f.value * e.value;
                                    if (eps < 0)
                                        c = -c;
                                    acc[f.index] += c;
                                }
                            }
                        });
                    }
                }
                for (auto& [order, coords] : value) {
                    SparseVec v;
                    for (auto& [idx, c] : coords)
                        if (!is_zero(c))
                            v.push_back({idx, c});
                    if (!v.empty()) {
                        res.holds = false;
                        res.witness = m;
                        res.witness_label = labels[mi];
                        res.order = order;
                        res.value_degree = out_degree;
                        res.value = std::move(v);
                        failed = true;
                        break;
                    }
                }
            }
            if (failed)
                break;
        }
        report.arities.push_back(std::move(res));
    }
    return report;
}

GradedMap shifted_lie_bracket(const LieAlgebra& g, const SymPower& sym2, const Rational& field_coefficient)
{
    const SpacePtr& v = sym2.generators();
    const std::size_t n = g.dim();
    if (sym2.weight() != 2 || v->dim(-1) != n || v->dim(0) != n)
        throw DimensionMismatch("shifted_lie_bracket needs copies of g in degrees -1 and 0");
    const bool has_top = v->dim(1) == n && !is_zero(field_coefficient);
    const GeneratorTable& gens = sym2.table();
    GradedMap l(sym2.space(), v, 1);
    for (int deg : sym2.space()->degrees()) {
        const int target = deg + 1;
        const std::size_t rows = v->dim(target);
        if (rows == 0)
            continue;
        SparseMatrix m(rows, sym2.space()->dim(deg));
        const auto& monos = sym2.monomials(deg);
        for (std::size_t col = 0; col < monos.size(); ++col) {
            const std::uint32_t a = monos[col][0], b = monos[col][1];
            const int da = gens.degree(a), db = gens.degree(b);
            const std::size_t i = gens.position(a), j = gens.position(b);
            Rational sign;
            if (da == -1 && db == -1)
                sign = -1; // -[c_i, c_j]
            else if (da == -1 && db == 0)
                sign = -1; // [A_j, c_i] = -[c_i, A_j]
            else if (da == 0 && db == 0 && has_top)
                sign = field_coefficient;
            else
                continue;
            if (i >= n || j >= n)
                continue;
            for (const auto& e : g.bracket(i, j))
                m.set(e.index, col, sign * e.value);
        }
        l.set_block(deg, std::move(m));
    }
    l.prune();
    return l;
}

LInftyStructure dgla_from_retract(const DeformationRetract& r, const LInftyStructure& small)
{
    require_retract(r);
    if (!r.small.d.is_zero())
        throw RetractInvariantsFailed("small complex must have zero differential");
    if (!same_space(small.space(), r.small.space))
        throw IncompatibleRetracts("small structure does not live on the small complex");
    LInftyStructure big(r.big, 2);
    const SymPower& bp = big.power(2);
    const SymPower& sp = small.power(2);
    const GeneratorTable& bg = bp.table();
    const GeneratorTable& sg = sp.table();
    const GradedMap l2 = small.bracket(2);

    GradedMap out(bp.space(), r.big.space, 1);
    for (const auto& [deg, labels] : bp.space()->components()) {
        const int target = deg + 1;
        if (r.big.space->dim(target) == 0)
            continue;
        SparseMatrix m(r.big.space->dim(target), labels.size());
        const auto& monos = bp.monomials(deg);
        for (std::size_t col = 0; col < monos.size(); ++col) {
            const std::uint32_t a = monos[col][0], b = monos[col][1];
            SparseVec pa = r.p.block(bg.degree(a)).transpose().row(bg.position(a));
            SparseVec pb = r.p.block(bg.degree(b)).transpose().row(bg.position(b));
            std::map<std::uint32_t, Rational> acc; // small target coordinates
            int small_target = 0;
            for (const auto& u : pa)
                for (const auto& w : pb) {
                    std::vector<std::uint32_t> in{sg.index(bg.degree(a), u.index), sg.index(bg.degree(b), w.index)};
                    SparseVec val = evaluate_bracket(l2, sp, in, small_target);
                    for (const auto& e : val)
                        acc[e.index] += u.value * w.value * e.value;
                }
            SparseVec sv;
            for (auto& [k, c] : acc)
                if (!is_zero(c))
                    sv.push_back({k, c});
            if (sv.empty())
                continue;
            SparseVec image = r.i.apply(target, sv);
            const Rational weight_factor = (a == b) ? Rational(1, 2) : Rational(1);
            for (const auto& e : image)
                m.set(e.index, col, e.value * weight_factor);
        }
        out.set_block(deg, std::move(m));
    }
    out.prune();
    big.set_bracket(2, std::move(out));
    JacobiReport jr = check_jacobi(big, 3);
    if (!jr.ok())
        throw JacobiFailed("pulled-back bracket violates the Jacobi identities");
    return big;
}

} // namespace moller
