#include "commands.hpp"

#include "moller/errors.hpp"
#include "moller/hpt.hpp"
#include "moller/moller_map.hpp"

#include <chrono>

namespace moller::app {

namespace {

using Clock = std::chrono::steady_clock;

Report base_report(const std::string& command, const LoadedModel& m, const Options& o)
{
    Report r;
    r.tool_version = toolchain_version();
    r.compiler = compiler_id();
    r.command = command;
    r.model_name = m.name;
    r.model_kind = m.kind;
    r.W = resolved_weight(m, o);
    r.L = resolved_order(m, o);
    r.mode = o.mode;
    r.route = o.route;
    r.notes = m.notes;
    return r;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

MatrixBlock block_of(int degree, const SparseMatrix& m)
{
    MatrixBlock b;
    b.degree = degree;
    b.rows = m.rows();
    b.cols = m.cols();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& e : m.row(i))
            b.entries.push_back({i, e.index, e.value});
    return b;
}

int jacobi_arity(const LInftyStructure& l, int order)
{
    return std::max(1, std::min(2 * l.max_arity() - 1, order + 1));
}

// Fills r.jacobi and returns whether every arity holds.
bool run_jacobi(Report& r, const LInftyStructure& l)
{
    JacobiReport jr = check_jacobi(l, jacobi_arity(l, r.L));
    for (const auto& a : jr.arities)
        r.jacobi.push_back({a.arity, a.holds, a.holds ? "" : a.witness_label, std::nullopt});
    return jr.ok();
}

bool run_mc(Report& r, const CEAlgebra& a)
{
    MCReport mr = mc_check(a);
    for (const auto& o : mr.orders)
        r.mc.push_back({o.order, o.holds, o.holds ? "" : o.witness_label, o.excluded});
    return mr.ok();
}

std::vector<KTerm> terms_of(const Polynomial& p, int order, const GeneratorTable& gens)
{
    std::vector<KTerm> out;
    for (const auto& [mono, c] : p)
        if (c != 0)
            out.push_back({order, monomial_label(mono, gens), c});
    return out;
}

// Images of the CE generators under sum_n lambda^n K_n, read off the weight-one columns.
std::vector<KImage> generator_images(const CEAlgebra& a, const FormalGradedMap& K)
{
    const SymTruncation& t = a.truncation();
    const GeneratorTable& gens = t.table();
    std::vector<KImage> out;
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
        KImage img;
        img.generator = gens.label(g);
        auto loc = t.find(Monomial{g});
        for (int n = 0; n <= a.max_order; ++n) {
            PartialMap kn = K.order(n);
            const SparseMatrix* blk = kn.map.find_block(loc->first);
            if (!blk)
                continue;
            SparseVec col;
            for (std::size_t row = 0; row < blk->rows(); ++row)
                if (Rational x = blk->at(row, loc->second); x != 0)
                    col.push_back({static_cast<std::uint32_t>(row), x});
            auto terms = terms_of(t.polynomial(loc->first + kn.map.shift(), col), n, gens);
            img.terms.insert(img.terms.end(), terms.begin(), terms.end());
        }
        out.push_back(std::move(img));
    }
    return out;
}

std::vector<KImage> generator_images(const CEAlgebra& a, const std::vector<GeneratorImages>& by_order)
{
    const GeneratorTable& gens = a.truncation().table();
    std::vector<KImage> out;
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
        KImage img;
        img.generator = gens.label(g);
        for (std::size_t n = 0; n < by_order.size(); ++n) {
            auto terms = terms_of(by_order[n][g], static_cast<int>(n), gens);
            img.terms.insert(img.terms.end(), terms.begin(), terms.end());
        }
        out.push_back(std::move(img));
    }
    return out;
}

bool two_term(const CEAlgebra& a)
{
    for (int k : a.generators.space->degrees())
        if (k != -1 && k != 0)
            return false;
    return true;
}

std::optional<TowerSection> splitting_section(const CEAlgebra& a)
{
    if (!two_term(a))
        return std::nullopt;
    auto s = find_splitting(a);
    if (!s)
        return std::nullopt;
    MollerCandidate k = moller_from_splitting(a, *s);
    MollerVerification v = verify_moller(a, k);
    if (!v.verified())
        return std::nullopt;
    TowerSection t;
    t.method = "splitting";
    t.verdict = to_string(TowerVerdict::ExistsUpTo);
    t.verified = true;
    for (const auto& o : v.orders)
        if (o.order >= 1)
            t.orders.push_back({o.order, to_string(OrderStatus::Solved), 0, 0, std::nullopt});
    t.K = generator_images(a, k.generator_images);
    return t;
}

TowerSection solver_section(const CEAlgebra& a, bool& certificates_ok)
{
    ObstructionReport rep = obstruction_tower(a, a.max_order, a.window);
    const GeneratorTable& gens = a.truncation().table();
    TowerSection t;
    t.method = "tower";
    t.verdict = to_string(rep.verdict);
    t.obstructed_order = rep.obstructed_order;
    certificates_ok = true;
    for (const auto& o : rep.orders) {
        TowerOrder to{o.order, to_string(o.status), o.blocks_solved, o.blocks_skipped, std::nullopt};
        if (o.certificate) {
            const ObstructionCertificate& c = *o.certificate;
            CertificateEntry ce;
            ce.source_weight = c.source_weight;
            ce.target_weight = c.target_weight;
            ce.source_monomial = monomial_label(c.source_monomial, gens);
            ce.pairing = c.pairing;
            ce.valid = certificate_valid(a, c);
            certificates_ok = certificates_ok && ce.valid;
            for (const auto& [k, m] : c.functional)
                ce.functional.push_back(block_of(k, m));
            for (const auto& [k, m] : c.rhs)
                ce.rhs.push_back(block_of(k, m));
            to.certificate = std::move(ce);
        }
        t.orders.push_back(std::move(to));
    }
    MollerCandidate k = candidate_from_report(a, rep);
    t.verified = rep.verdict == TowerVerdict::ExistsUpTo && verify_moller(a, k).verified();
    t.K = generator_images(a, k.K);
    return t;
}

HptSection hpt_section(const LoadedModel& m)
{
    HptSection h;
    NonexistenceEvidence ev = nonexistence_certificate(m.structure, m.retract);
    h.verdict = to_string(ev.verdict);
    const SpacePtr& small = m.retract.small.space;
    if (small->dim(-1) > 0)
        h.h_minus1 = small->labels(-1);
    h.bracket = block_of(-2, ev.transferred.ghost_block);
    if (ev.verdict == NonexistenceVerdict::NonExistence) {
        Witness w;
        w.a = ev.label_a;
        w.b = ev.label_b;
        for (const auto& e : ev.value)
            w.value.push_back({h.h_minus1.at(e.index), e.value});
        w.eigenvalue = ev.eigenvalue;
        h.witness = std::move(w);
    }
    return h;
}

std::string tower_verdict_text(const TowerSection& t, int W, int L)
{
    if (t.verdict == "EXISTS-UP-TO")
        return "EXISTS-UP-TO(" + std::to_string(L) + "," + std::to_string(W) + ")";
    if (t.verdict == "OBSTRUCTED-AT-ORDER")
        return "OBSTRUCTED-AT-ORDER(" + std::to_string(t.obstructed_order) + ")";
    return t.verdict;
}

} // namespace

int resolved_weight(const LoadedModel& m, const Options& o) { return o.weight ? *o.weight : m.W.value_or(4); }
int resolved_order(const LoadedModel& m, const Options& o) { return o.order ? *o.order : m.L.value_or(3); }

int reconcile_routes(Report& r, bool certificates_ok)
{
    int code = ExitOk;
    if (r.hpt && r.hpt->verdict == "NON-EXISTENCE") {
        r.verdict = "NON-EXISTENCE";
        r.verdict_text = "NON-EXISTENCE";
        if (r.tower) {
            const bool agree = r.tower->verdict == "OBSTRUCTED-AT-ORDER" && r.tower->obstructed_order == 1;
            const bool undecided = r.tower->verdict == "INCONCLUSIVE";
            if (!agree && !undecided) {
                r.notes.push_back("routes disagree: the transferred bracket rules out a Moller map but the tower "
                                  "does not obstruct at order 1");
                code = ExitInconsistent;
            }
        }
    } else if (r.tower) {
        r.verdict = r.tower->verdict;
        r.verdict_text = tower_verdict_text(*r.tower, r.W, r.L);
    } else {
        r.verdict = "INCONCLUSIVE";
        r.verdict_text = "INCONCLUSIVE";
    }
    if (!certificates_ok) {
        r.notes.push_back("an obstruction certificate failed independent validation");
        code = ExitInconsistent;
    }
    return code;
}

Report cmd_check(const LoadedModel& m, const Options& o)
{
    const auto t0 = Clock::now();
    Report r = base_report("check", m, o);
    auto finish = [&](int code) {
        r.exit_code = code;
        r.seconds = seconds_since(t0);
        return r;
    };

    r.complex_ok = verify_complex(m.structure.complex());
    if (!r.complex_ok) {
        r.notes.push_back("the differential does not square to zero");
        return finish(ExitInvariant);
    }

    std::optional<CEAlgebra> a;
    if (m.full_linfty) {
        if (!run_jacobi(r, m.structure)) {
            r.notes.push_back("homotopy Jacobi fails");
            return finish(ExitInvariant);
        }
        a = build_ce(m.structure, r.W, r.L, false);
        if (!run_mc(r, *a)) {
            r.notes.push_back("Maurer-Cartan equation fails");
            return finish(ExitInvariant);
        }
    }

    bool certificates_ok = true;
    if (o.route != "hpt") {
        if (!a) {
            r.notes.push_back("tower route skipped");
        } else {
            if (o.mode == "algebra") {
                r.tower = splitting_section(*a);
                if (!r.tower)
                    r.notes.push_back(two_term(*a) ? "delta0 has no splitting; solving order by order"
                                                   : "fields are not a two-term complex; solving order by order");
            }
            if (!r.tower)
                r.tower = solver_section(*a, certificates_ok);
        }
    }
    if (o.route != "tower") {
        try {
            r.hpt = hpt_section(m);
        } catch (const DegreeRangeViolated& e) {
            r.notes.push_back(std::string("hpt route skipped: ") + e.what());
        }
    }

    return finish(reconcile_routes(r, certificates_ok));
}

Report cmd_cohomology(const LoadedModel& m, const Options& o)
{
    const auto t0 = Clock::now();
    Report r = base_report("cohomology", m, o);
    r.complex_ok = verify_complex(m.structure.complex());
    if (!r.complex_ok || !m.full_linfty) {
        r.notes.push_back(!r.complex_ok ? "the differential does not square to zero"
                                        : "CE cohomology needs a full L-infinity structure");
        r.exit_code = ExitInvariant;
        r.seconds = seconds_since(t0);
        return r;
    }
    r.W = std::max(r.W, o.weight_max);
    CEAlgebra a = build_ce(m.structure, r.W, r.L, false);
    if (!run_mc(r, a)) {
        r.notes.push_back("Maurer-Cartan equation fails");
        r.exit_code = ExitInvariant;
        r.seconds = seconds_since(t0);
        return r;
    }
    CohomologyTable t = ce_cohomology(a, o.degree, o.weight_max);
    CohomologySection c;
    c.degree = t.degree;
    c.filtered_only = t.filtered_only;
    for (const auto& row : t.rows)
        c.rows.push_back({row.weight, row.full_dim, row.free_dim, row.kernel_dim, row.perturbed_dim, row.excluded});
    r.cohomology = std::move(c);
    r.exit_code = ExitOk;
    r.seconds = seconds_since(t0);
    return r;
}

Report cmd_jacobi(const LoadedModel& m, const Options& o)
{
    const auto t0 = Clock::now();
    Report r = base_report("jacobi", m, o);
    r.complex_ok = verify_complex(m.structure.complex());
    if (!m.full_linfty)
        r.notes.push_back("not an L-infinity algebra; failures are expected");
    const bool ok = run_jacobi(r, m.structure) && r.complex_ok;
    r.exit_code = ok ? ExitOk : ExitInvariant;
    r.seconds = seconds_since(t0);
    return r;
}

Report cmd_mc(const LoadedModel& m, const Options& o)
{
    const auto t0 = Clock::now();
    Report r = base_report("mc", m, o);
    r.complex_ok = verify_complex(m.structure.complex());
    if (!m.full_linfty) {
        // Jacobi already fails at arity two, so the CE differential cannot square to zero.
        r.notes.push_back("not an L-infinity algebra; the Maurer-Cartan check does not apply");
        r.exit_code = ExitInvariant;
        r.seconds = seconds_since(t0);
        return r;
    }
    const bool ok = run_mc(r, build_ce(m.structure, r.W, r.L, false)) && r.complex_ok;
    r.exit_code = ok ? ExitOk : ExitInvariant;
    r.seconds = seconds_since(t0);
    return r;
}

} // namespace moller::app
