#include "moller/hpt.hpp"

#include <algorithm>

namespace moller {

namespace {

GradedMap derivation_on(const CochainComplex& c, const SymTruncation& t)
{
    SymPower one(c.space, 1);
    PartialMap d = extend_derivation(images_from_map(c.d, one), 1, t);
    if (d.has_unknown())
        throw DimensionMismatch("linear differential left the truncation");
    return d.map;
}

// Series in a formal variable t; entry a is the coefficient of t^a.
using TSeries = std::vector<Polynomial>;

void times(TSeries& s, const Polynomial& p, std::size_t shift, const GeneratorTable& gens, TSeries& out)
{
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (s[a].empty() || p.empty())
            continue;
        if (out.size() <= a + shift)
            out.resize(a + shift + 1);
        add_scaled(out[a + shift], multiply(s[a], p, gens), Rational(1));
    }
}

GradedMap lifted_homotopy(const DeformationRetract& r, const SymTruncation& big)
{
    const GeneratorTable& gens = big.table();
    SymPower one(r.big.space, 1);
    const GradedMap pi = compose(r.i, r.p);
    GeneratorImages pi_img = images_from_map(pi, one);
    GeneratorImages h_img = images_from_map(r.h, one);
    GeneratorImages rest_img(gens.size());
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
        rest_img[g][Monomial{g}] = 1;
        add_scaled(rest_img[g], pi_img[g], Rational(-1));
    }

    GradedMap H(big.space(), big.space(), -1);
    for (const auto& [k, labels] : big.space()->components()) {
        if (big.space()->dim(k - 1) == 0)
            continue;
        std::vector<SparseVec> cols(labels.size());
        bool any = false;
        for (std::size_t col = 0; col < labels.size(); ++col) {
            const Monomial& m = big.monomial(k, col);
            Polynomial total;
            int prefix = 0;
            for (std::size_t j = 0; j < m.size(); ++j) {
                const int sign = (prefix & 1) ? -1 : 1;
                prefix += gens.degree(m[j]);
                if (h_img[m[j]].empty())
                    continue;
                TSeries s{Polynomial{{Monomial{}, Rational(1)}}};
                for (std::size_t q = 0; q < m.size() && !s.empty(); ++q) {
                    TSeries next;
                    if (q == j) {
                        times(s, h_img[m[q]], 1, gens, next);
                    } else {
                        times(s, pi_img[m[q]], 0, gens, next);
                        times(s, rest_img[m[q]], 1, gens, next);
                    }
                    s = std::move(next);
                }
                for (std::size_t a = 1; a < s.size(); ++a)
                    add_scaled(total, s[a], Rational(sign, static_cast<long>(a)));
            }
            if (total.empty())
                continue;
            cols[col] = big.coordinates(total, k - 1);
            any = true;
        }
        if (any)
            H.set_block(k, SparseMatrix::from_columns(big.space()->dim(k - 1), labels.size(), cols));
    }
    return H;
}

} // namespace

SymRetract sym_lift_retract(const DeformationRetract& r, std::shared_ptr<const SymTruncation> big)
{
    require_retract(r);
    DeformationRetract g = r;
    if (!check_retract(g).side_conditions())
        g = normalize_side_conditions(g);
    require_retract(g, true);
    if (!same_space(big->generators(), g.big.space))
        throw IncompatibleRetracts("truncation generators differ from the big complex");

    SymRetract out;
    out.big = std::move(big);
    out.small = std::make_shared<const SymTruncation>(g.small.space, out.big->max_weight());
    const SymTruncation& tb = *out.big;
    const SymTruncation& ts = *out.small;
    DeformationRetract& R = out.retract;
    R.big = CochainComplex(tb.space(), derivation_on(g.big, tb));
    R.small = CochainComplex(ts.space(), derivation_on(g.small, ts));
    R.i = sym_map(g.i, ts, tb);
    R.p = sym_map(g.p, tb, ts);
    R.h = lifted_homotopy(g, tb);
    RetractCheck c = check_retract(R);
    if (!c.ok())
        throw RetractInvariantsFailed("lifted retract: " + c.describe());
    return out;
}

SymRetract sym_lift_retract(const DeformationRetract& r, int max_weight)
{
    return sym_lift_retract(r, std::make_shared<const SymTruncation>(r.big.space, max_weight));
}

bool PerturbedRetract::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const PerturbCheck& c) { return c.ok(); });
}

namespace {

FormalGradedMap series(const SpacePtr& s, const SpacePtr& t, int shift, int max_order)
{
    FormalGradedMap f;
    f.source = s;
    f.target = t;
    f.shift = shift;
    f.max_order = max_order;
    return f;
}

PartialMap sum_products(const std::vector<std::pair<PartialMap, PartialMap>>& pairs, const PartialMap& zero)
{
    PartialMap acc = zero;
    for (const auto& [a, b] : pairs)
        acc = acc + compose(a, b);
    return acc;
}

} // namespace

PerturbedRetract perturb(const SymRetract& base, const FormalGradedMap& delta, int max_order, PerturbMode mode)
{
    auto zero_it = delta.orders.find(0);
    if (zero_it != delta.orders.end() && !zero_it->second.map.is_zero())
        throw OrderZeroPerturbation("perturbation has a lambda^0 part");
    const DeformationRetract& r = base.retract;
    const SpacePtr& B = r.big.space;
    const SpacePtr& S = r.small.space;
    if (!same_space(delta.source, B))
        throw ShapeMismatch("perturbation does not act on the big truncation");

    PerturbedRetract out;
    out.base = base;
    out.delta = delta;
    out.mode = mode;
    out.max_order = max_order;
    out.tilde_delta = series(S, S, 1, max_order);
    out.tilde_i = series(S, B, 0, max_order);
    out.tilde_p = series(B, S, 0, max_order);
    out.tilde_h = series(B, B, -1, max_order);

    const PartialMap I(r.i), P(r.p), H(r.h);
    out.tilde_i.orders.emplace(0, I);
    out.tilde_p.orders.emplace(0, P);
    out.tilde_h.orders.emplace(0, H);

    auto dj = [&](int j) { return delta.order(j); };
    std::map<int, PartialMap> A; // strict: big -> big; delta-only: A_n I
    for (int n = 1; n <= max_order; ++n) {
        PartialMap an = mode == PerturbMode::Strict ? dj(n) : compose(dj(n), I);
        int longest = 0;
        for (int j = 1; j < n; ++j) {
            an = an + compose(dj(j), compose(H, A.at(n - j)));
            longest = std::max(longest, 1 + out.longest_word[n - j]);
        }
        out.longest_word[n] = longest;
        A.emplace(n, an);
        PartialMap ai = mode == PerturbMode::Strict ? compose(an, I) : an;
        out.tilde_delta.orders.emplace(n, compose(P, ai));
        out.tilde_i.orders.emplace(n, compose(H, ai));
        if (mode == PerturbMode::Strict) {
            PartialMap ah = compose(an, H);
            out.tilde_p.orders.emplace(n, compose(P, ah));
            out.tilde_h.orders.emplace(n, compose(H, ah));
        }
    }

    // Order-by-order identities; order 0 carries the unperturbed ones.
    const PartialMap D(r.big.d), d(r.small.d);
    auto big_delta = [&](int j) { return j == 0 ? D : dj(j); };
    auto small_delta = [&](int j) { return j == 0 ? d : out.tilde_delta.order(j); };
    for (int n = 0; n <= max_order; ++n) {
        PerturbCheck c;
        c.order = n;
        const PartialMap zi(GradedMap(S, B, 1)), zp(GradedMap(B, S, 1)), zs(GradedMap(S, S, 2));
        {
            std::vector<std::pair<PartialMap, PartialMap>> lhs, rhs;
            for (int j = 0; j <= n; ++j) {
                lhs.emplace_back(big_delta(j), out.tilde_i.order(n - j));
                rhs.emplace_back(out.tilde_i.order(n - j), small_delta(j));
            }
            c.i_chain = agree_on_known(sum_products(lhs, zi), sum_products(rhs, zi));
        }
        {
            std::vector<std::pair<PartialMap, PartialMap>> sq;
            for (int j = 0; j <= n; ++j)
                sq.emplace_back(small_delta(j), small_delta(n - j));
            c.square_zero = zero_on_known(sum_products(sq, zs));
        }
        if (mode == PerturbMode::Strict) {
            std::vector<std::pair<PartialMap, PartialMap>> lhs, rhs, pi, hom, ip;
            for (int j = 0; j <= n; ++j) {
                lhs.emplace_back(out.tilde_p.order(n - j), big_delta(j));
                rhs.emplace_back(small_delta(j), out.tilde_p.order(n - j));
                pi.emplace_back(out.tilde_p.order(j), out.tilde_i.order(n - j));
                hom.emplace_back(big_delta(j), out.tilde_h.order(n - j));
                hom.emplace_back(out.tilde_h.order(n - j), big_delta(j));
                ip.emplace_back(out.tilde_i.order(j), out.tilde_p.order(n - j));
            }
            c.p_chain = agree_on_known(sum_products(lhs, zp), sum_products(rhs, zp));
            PartialMap zid(GradedMap(S, S, 0));
            PartialMap pisum = sum_products(pi, zid);
            if (n == 0)
                pisum = pisum + PartialMap(scaled(identity_map(S), Rational(-1)));
            c.pi_identity = zero_on_known(pisum);
            PartialMap zbb(GradedMap(B, B, 0));
            PartialMap lhs_h = sum_products(hom, zbb);
            PartialMap rhs_h = sum_products(ip, zbb);
            if (n == 0)
                rhs_h = rhs_h + PartialMap(scaled(identity_map(B), Rational(-1)));
            c.homotopy = agree_on_known(lhs_h, rhs_h);
        }
        out.checks.push_back(c);
    }
    return out;
}

TransferredCE transfer_ce(const CEAlgebra& a, const DeformationRetract& field_retract, PerturbMode mode)
{
    DeformationRetract dr = dual_retract(field_retract);
    if (!same_space(dr.big.space, a.generators.space) || dr.big.d != a.generators.d)
        throw IncompatibleRetracts("retract does not match the CE generators");
    SymRetract base = sym_lift_retract(dr, a.trunc);

    TransferredCE out;
    out.perturbed = perturb(base, a.delta, a.max_order, mode);
    CEAlgebra& s = out.small;
    s.generators = dr.small;
    s.trunc = base.small;
    s.window = a.window;
    s.max_order = a.max_order;
    s.delta0 = base.retract.small.d;
    s.delta = out.perturbed.tilde_delta;

    const SymTruncation& ts = *base.small;
    const GeneratorTable& gens = ts.table();
    auto generator_images = [&](const GradedMap& m) {
        GeneratorImages img(gens.size());
        for (std::uint32_t g = 0; g < gens.size(); ++g) {
            auto loc = ts.find(Monomial{g});
            if (!loc)
                continue;
            const SparseMatrix* blk = m.find_block(loc->first);
            if (!blk)
                continue;
            SparseVec col;
            for (std::size_t row = 0; row < blk->rows(); ++row) {
                Rational v = blk->at(row, loc->second);
                if (!is_zero(v))
                    col.push_back({static_cast<std::uint32_t>(row), v});
            }
            img[g] = ts.polynomial(loc->first + m.shift(), col);
        }
        return img;
    };
    s.delta0_generators = generator_images(s.delta0);
    for (const auto& [n, pm] : s.delta.orders)
        s.delta_generators[n] = generator_images(pm.map);
    return out;
}

TransferredBracket transfer_l2(const DeformationRetract& r, const LInftyStructure& l)
{
    require_retract(r);
    if (!r.small.d.is_zero())
        throw RetractInvariantsFailed("small complex must have zero differential");
    if (!same_space(r.big.space, l.space()))
        throw IncompatibleRetracts("retract and structure live on different complexes");

    TransferredBracket out;
    out.small = LInftyStructure(r.small, 2);
    if (l.max_arity() < 2) {
        out.ghost_block = out.small.bracket(2).block(-2);
        return out;
    }
    const SymPower& sp = out.small.power(2);
    const SymPower& bp = l.power(2);
    const GeneratorTable& sg = sp.table();
    const GeneratorTable& bg = bp.table();
    const GradedMap l2 = l.bracket(2);

    GradedMap tl(sp.space(), r.small.space, 1);
    for (const auto& [deg, labels] : sp.space()->components()) {
        const int target = deg + 1;
        if (r.small.space->dim(target) == 0)
            continue;
        SparseMatrix m(r.small.space->dim(target), labels.size());
        const auto& monos = sp.monomials(deg);
        for (std::size_t col = 0; col < monos.size(); ++col) {
            const std::uint32_t u = monos[col][0], v = monos[col][1];
            SparseVec iu = r.i.block(sg.degree(u)).transpose().row(sg.position(u));
            SparseVec iv = r.i.block(sg.degree(v)).transpose().row(sg.position(v));
            std::map<std::uint32_t, Rational> acc;
            for (const auto& a : iu)
                for (const auto& b : iv) {
                    int td = 0;
                    std::vector<std::uint32_t> in{bg.index(sg.degree(u), a.index), bg.index(sg.degree(v), b.index)};
                    for (const auto& e : evaluate_bracket(l2, bp, in, td))
                        acc[e.index] += a.value * b.value * e.value;
                }
            SparseVec big;
            for (auto& [k, c] : acc)
                if (!is_zero(c))
                    big.push_back({k, c});
            SparseVec small = r.p.apply(target, big);
            const Rational weight_factor = (u == v) ? Rational(1, 2) : Rational(1);
            for (const auto& e : small)
                m.set(e.index, col, e.value * weight_factor);
        }
        tl.set_block(deg, std::move(m));
    }
    tl.prune();
    out.ghost_block = tl.block(-2);
    out.ghost_nonzero = !out.ghost_block.is_zero();
    out.small.set_bracket(2, std::move(tl));
    return out;
}

NonexistenceEvidence nonexistence_certificate(const LInftyStructure& l, const DeformationRetract& r)
{
    for (int k : l.space()->degrees())
        if (k < -1)
            throw DegreeRangeViolated("complex has a nonzero component in degree " + std::to_string(k));
    NonexistenceEvidence ev;
    ev.transferred = transfer_l2(r, l);
    if (!ev.transferred.ghost_nonzero)
        return ev;

    const LInftyStructure& s = ev.transferred.small;
    const SymPower& sp = s.power(2);
    const GeneratorTable& sg = sp.table();
    const GradedMap l2 = s.bracket(2);
    const std::size_t n = r.small.space->dim(-1);
    const auto& labels = r.small.space->labels(-1);

    std::optional<std::pair<std::size_t, std::size_t>> first;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b)
                continue;
            int td = 0;
            SparseVec v = evaluate_bracket(l2, sp, {sg.index(-1, a), sg.index(-1, b)}, td);
            if (v.empty())
                continue;
            if (!first)
                first = std::make_pair(a, b);
            if (v.size() == 1 && v[0].index == b && !ev.eigenvalue) {
                ev.eigenvalue = v[0].value;
                ev.witness_a = a;
                ev.witness_b = b;
            }
        }
    if (!ev.eigenvalue) {
        ev.witness_a = first->first;
        ev.witness_b = first->second;
    }
    int td = 0;
    ev.value = evaluate_bracket(l2, sp, {sg.index(-1, ev.witness_a), sg.index(-1, ev.witness_b)}, td);
    ev.label_a = labels[ev.witness_a];
    ev.label_b = labels[ev.witness_b];
    ev.verdict = NonexistenceVerdict::NonExistence;
    return ev;
}

std::string to_string(NonexistenceVerdict v)
{
    return v == NonexistenceVerdict::NonExistence ? "NON-EXISTENCE" : "INCONCLUSIVE";
}

} // namespace moller
