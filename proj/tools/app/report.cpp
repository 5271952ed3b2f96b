#include "report.hpp"

#include "model_file.hpp"

#include <iomanip>
#include <sstream>

#ifndef MOLLER_VERSION
#define MOLLER_VERSION "0.0.0"
#endif

namespace moller::app {

std::string toolchain_version() { return MOLLER_VERSION; }

std::string compiler_id()
{
#if defined(__clang__)
    return "clang " + std::to_string(__clang_major__) + "." + std::to_string(__clang_minor__);
#elif defined(__GNUC__)
    return "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#else
    return "unknown";
#endif
}

namespace {

Json block_json(const MatrixBlock& b)
{
    Json entries = Json::array();
    for (const auto& e : b.entries)
        entries.push_back(Json::array({e.row, e.col, to_string(e.value)}));
    return Json{{"degree", b.degree}, {"rows", b.rows}, {"cols", b.cols}, {"entries", entries}};
}

MatrixBlock block_of(const Json& j)
{
    MatrixBlock b;
    b.degree = j.at("degree").get<int>();
    b.rows = j.at("rows").get<std::size_t>();
    b.cols = j.at("cols").get<std::size_t>();
    for (const auto& e : j.at("entries"))
        b.entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), parse_rational(e.at(2).get<std::string>())});
    return b;
}

Json vector_json(const LabeledVector& v)
{
    Json o = Json::object();
    for (const auto& [l, c] : v)
        o[l] = to_string(c);
    return o;
}

LabeledVector vector_of(const Json& j)
{
    LabeledVector v;
    for (const auto& [l, c] : j.items())
        v.push_back({l, parse_rational(c.get<std::string>())});
    return v;
}

Json checks_json(const std::vector<CheckEntry>& checks)
{
    Json a = Json::array();
    for (const auto& c : checks) {
        Json o{{"index", c.index}, {"holds", c.holds}};
        if (!c.witness.empty())
            o["witness"] = c.witness;
        if (c.excluded)
            o["excluded"] = *c.excluded;
        a.push_back(o);
    }
    return a;
}

std::vector<CheckEntry> checks_of(const Json& j)
{
    std::vector<CheckEntry> out;
    for (const auto& o : j) {
        CheckEntry c;
        c.index = o.at("index").get<int>();
        c.holds = o.at("holds").get<bool>();
        if (o.contains("witness"))
            c.witness = o.at("witness").get<std::string>();
        if (o.contains("excluded"))
            c.excluded = o.at("excluded").get<std::size_t>();
        out.push_back(c);
    }
    return out;
}

Json certificate_json(const CertificateEntry& c)
{
    Json f = Json::array(), r = Json::array();
    for (const auto& b : c.functional)
        f.push_back(block_json(b));
    for (const auto& b : c.rhs)
        r.push_back(block_json(b));
    return Json{{"source_weight", c.source_weight},
                {"target_weight", c.target_weight},
                {"source_monomial", c.source_monomial},
                {"pairing", to_string(c.pairing)},
                {"valid", c.valid},
                {"functional", f},
                {"rhs", r}};
}

CertificateEntry certificate_of(const Json& j)
{
    CertificateEntry c;
    c.source_weight = j.at("source_weight").get<int>();
    c.target_weight = j.at("target_weight").get<int>();
    c.source_monomial = j.at("source_monomial").get<std::string>();
    c.pairing = parse_rational(j.at("pairing").get<std::string>());
    c.valid = j.at("valid").get<bool>();
    for (const auto& b : j.at("functional"))
        c.functional.push_back(block_of(b));
    for (const auto& b : j.at("rhs"))
        c.rhs.push_back(block_of(b));
    return c;
}

std::string polynomial_text(const std::vector<KTerm>& terms)
{
    if (terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        Rational c = t.coefficient;
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << "-";
        if (!first || sgn(c) < 0)
            c = abs(c);
        first = false;
        const bool unit = c == 1;
        if (!unit)
            os << to_string(c) << " ";
        if (t.order == 1)
            os << "λ ";
        else if (t.order > 1)
            os << "λ^" << t.order << " ";
        os << t.monomial;
    }
    return os.str();
}

// Cohomology labels from a nontrivial retract already carry brackets.
std::string bracketed(const std::string& l) { return !l.empty() && l.front() == '[' ? l : "[" + l + "]"; }

std::string vector_text(const LabeledVector& v)
{
    if (v.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : v) {
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << "-";
        Rational a = abs(c);
        if (a != 1)
            os << to_string(a);
        os << bracketed(l);
        first = false;
    }
    return os.str();
}

} // namespace

Json to_json(const Report& r)
{
    Json j;
    j["format"] = "moller-report/1";
    j["toolchain"] = Json{{"name", r.tool}, {"version", r.tool_version}, {"compiler", r.compiler}};
    j["command"] = r.command;
    j["model"] = Json{{"name", r.model_name}, {"kind", r.model_kind}};
    j["truncation"] = Json{{"W", r.W}, {"L", r.L}};
    j["options"] = Json{{"mode", r.mode}, {"route", r.route}};
    if (r.verdict)
        j["verdict"] = *r.verdict;
    if (r.verdict_text)
        j["verdict_text"] = *r.verdict_text;
    j["exit_code"] = r.exit_code;
    j["checks"] = Json{{"complex", r.complex_ok}, {"jacobi", checks_json(r.jacobi)}, {"mc", checks_json(r.mc)}};
    if (r.tower) {
        const TowerSection& t = *r.tower;
        Json orders = Json::array();
        for (const auto& o : t.orders) {
            Json oj{{"order", o.order},
                    {"status", o.status},
                    {"blocks_solved", o.blocks_solved},
                    {"blocks_skipped", o.blocks_skipped}};
            if (o.certificate)
                oj["certificate"] = certificate_json(*o.certificate);
            orders.push_back(oj);
        }
        Json k = Json::array();
        for (const auto& img : t.K) {
            Json terms = Json::array();
            for (const auto& term : img.terms)
                terms.push_back(Json{{"order", term.order}, {"monomial", term.monomial}, {"coefficient", to_string(term.coefficient)}});
            k.push_back(Json{{"generator", img.generator}, {"terms", terms}});
        }
        j["tower"] = Json{{"method", t.method},
                          {"verdict", t.verdict},
                          {"obstructed_order", t.obstructed_order},
                          {"verified", t.verified},
                          {"orders", orders},
                          {"K", k}};
    }
    if (r.hpt) {
        const HptSection& h = *r.hpt;
        Json hj{{"verdict", h.verdict}, {"h_minus1", h.h_minus1}, {"bracket", block_json(h.bracket)}};
        if (h.witness) {
            Json w{{"a", h.witness->a}, {"b", h.witness->b}, {"value", vector_json(h.witness->value)}};
            if (h.witness->eigenvalue)
                w["eigenvalue"] = to_string(*h.witness->eigenvalue);
            hj["witness"] = w;
        }
        j["hpt"] = hj;
    }
    if (r.cohomology) {
        Json rows = Json::array();
        for (const auto& row : r.cohomology->rows)
            rows.push_back(Json{{"weight", row.weight},
                                {"full", row.full},
                                {"free", row.free},
                                {"kernel", row.kernel},
                                {"perturbed", row.perturbed},
                                {"excluded", row.excluded}});
        j["cohomology"] = Json{{"degree", r.cohomology->degree}, {"filtered_only", r.cohomology->filtered_only}, {"rows", rows}};
    }
    j["notes"] = r.notes;
    j["timing"] = Json{{"seconds", r.seconds}};
    return j;
}

Report report_from_json(const Json& j)
{
    try {
        Report r;
        const Json& tc = j.at("toolchain");
        r.tool = tc.at("name").get<std::string>();
        r.tool_version = tc.at("version").get<std::string>();
        r.compiler = tc.at("compiler").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.model_name = j.at("model").at("name").get<std::string>();
        r.model_kind = j.at("model").at("kind").get<std::string>();
        r.W = j.at("truncation").at("W").get<int>();
        r.L = j.at("truncation").at("L").get<int>();
        r.mode = j.at("options").at("mode").get<std::string>();
        r.route = j.at("options").at("route").get<std::string>();
        if (j.contains("verdict"))
            r.verdict = j.at("verdict").get<std::string>();
        if (j.contains("verdict_text"))
            r.verdict_text = j.at("verdict_text").get<std::string>();
        r.exit_code = j.at("exit_code").get<int>();
        r.complex_ok = j.at("checks").at("complex").get<bool>();
        r.jacobi = checks_of(j.at("checks").at("jacobi"));
        r.mc = checks_of(j.at("checks").at("mc"));
        if (j.contains("tower")) {
            const Json& tj = j.at("tower");
            TowerSection t;
            t.method = tj.at("method").get<std::string>();
            t.verdict = tj.at("verdict").get<std::string>();
            t.obstructed_order = tj.at("obstructed_order").get<int>();
            t.verified = tj.at("verified").get<bool>();
            for (const auto& oj : tj.at("orders")) {
                TowerOrder o;
                o.order = oj.at("order").get<int>();
                o.status = oj.at("status").get<std::string>();
                o.blocks_solved = oj.at("blocks_solved").get<std::size_t>();
                o.blocks_skipped = oj.at("blocks_skipped").get<std::size_t>();
                if (oj.contains("certificate"))
                    o.certificate = certificate_of(oj.at("certificate"));
                t.orders.push_back(std::move(o));
            }
            for (const auto& kj : tj.at("K")) {
                KImage img;
                img.generator = kj.at("generator").get<std::string>();
                for (const auto& term : kj.at("terms"))
                    img.terms.push_back({term.at("order").get<int>(), term.at("monomial").get<std::string>(),
                                         parse_rational(term.at("coefficient").get<std::string>())});
                t.K.push_back(std::move(img));
            }
            r.tower = std::move(t);
        }
        if (j.contains("hpt")) {
            const Json& hj = j.at("hpt");
            HptSection h;
            h.verdict = hj.at("verdict").get<std::string>();
            h.h_minus1 = hj.at("h_minus1").get<std::vector<std::string>>();
            h.bracket = block_of(hj.at("bracket"));
            if (hj.contains("witness")) {
                const Json& w = hj.at("witness");
                Witness wt;
                wt.a = w.at("a").get<std::string>();
                wt.b = w.at("b").get<std::string>();
                wt.value = vector_of(w.at("value"));
                if (w.contains("eigenvalue"))
                    wt.eigenvalue = parse_rational(w.at("eigenvalue").get<std::string>());
                h.witness = std::move(wt);
            }
            r.hpt = std::move(h);
        }
        if (j.contains("cohomology")) {
            const Json& cj = j.at("cohomology");
            CohomologySection c;
            c.degree = cj.at("degree").get<int>();
            c.filtered_only = cj.at("filtered_only").get<bool>();
            for (const auto& row : cj.at("rows"))
                c.rows.push_back({row.at("weight").get<int>(), row.at("full").get<std::size_t>(),
                                  row.at("free").get<std::size_t>(), row.at("kernel").get<std::size_t>(),
                                  row.at("perturbed").get<std::size_t>(), row.at("excluded").get<bool>()});
            r.cohomology = std::move(c);
        }
        r.notes = j.at("notes").get<std::vector<std::string>>();
        r.seconds = j.at("timing").at("seconds").get<double>();
        return r;
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    }
}

std::string render_machine(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r)
{
    std::ostringstream os;
    os << "model      " << r.model_name << " (" << r.model_kind << ")\n";
    os << "command    " << r.command << "\n";
    os << "truncation W=" << r.W << " L=" << r.L;
    if (r.command == "check")
        os << "  mode=" << r.mode << "  route=" << r.route;
    os << "\n";
    os << "complex    " << (r.complex_ok ? "d^2 = 0" : "d^2 != 0") << "\n";
    if (!r.jacobi.empty()) {
        os << "jacobi    ";
        for (const auto& c : r.jacobi)
            os << " n=" << c.index << ":" << (c.holds ? "ok" : "FAIL");
        os << "\n";
        for (const auto& c : r.jacobi)
            if (!c.holds)
                os << "           arity " << c.index << " fails on " << c.witness << "\n";
    }
    if (!r.mc.empty()) {
        os << "mc        ";
        for (const auto& c : r.mc)
            os << " order " << c.index << ":" << (c.holds ? "ok" : "FAIL");
        os << "\n";
        for (const auto& c : r.mc)
            if (!c.holds)
                os << "           order " << c.index << " fails on " << c.witness << "\n";
    }
    if (r.tower) {
        const TowerSection& t = *r.tower;
        os << "tower      " << t.verdict;
        if (t.verdict == "OBSTRUCTED-AT-ORDER")
            os << "(" << t.obstructed_order << ")";
        os << " via " << (t.method == "splitting" ? "splitting" : "order-by-order solve");
        os << (t.verified ? ", verified" : "") << "\n";
        for (const auto& o : t.orders) {
            os << "  order " << o.order << ": " << o.status;
            if (t.method == "tower")
                os << " (" << o.blocks_solved << " blocks solved, " << o.blocks_skipped << " zero)";
            os << "\n";
            if (o.certificate) {
                const CertificateEntry& c = *o.certificate;
                os << "    certificate on " << c.source_monomial << " (weight " << c.source_weight << " -> "
                   << c.target_weight << "), pairing " << to_string(c.pairing)
                   << (c.valid ? ", valid" : ", INVALID") << "\n";
            }
        }
        if (!t.K.empty()) {
            os << "K on CE generators\n";
            for (const auto& img : t.K)
                os << "  K(" << img.generator << ") = " << polynomial_text(img.terms) << "\n";
        }
    }
    if (r.hpt) {
        const HptSection& h = *r.hpt;
        os << "hpt        " << h.verdict << "\n";
        os << "  H^-1 basis:";
        for (const auto& l : h.h_minus1)
            os << " " << bracketed(l);
        if (h.h_minus1.empty())
            os << " (zero)";
        os << "\n";
        if (h.witness)
            os << "  witness: l~2(" << bracketed(h.witness->a) << ", " << bracketed(h.witness->b)
               << ") = " << vector_text(h.witness->value) << "\n";
    }
    if (r.cohomology) {
        const CohomologySection& c = *r.cohomology;
        os << "CE cohomology in degree " << c.degree << (c.filtered_only ? " (filtered result only)" : "") << "\n";
        os << "  weight   Sym^w   free   perturbed\n";
        for (const auto& row : c.rows) {
            os << "  " << std::setw(6) << row.weight << "  " << std::setw(6) << row.full << "  " << std::setw(5)
               << row.free << "   ";
            if (row.excluded)
                os << "excluded";
            else
                os << std::setw(9) << row.perturbed;
            os << "\n";
        }
    }
    for (const auto& n : r.notes)
        os << "note       " << n << "\n";
    if (r.verdict_text)
        os << "verdict    " << *r.verdict_text << "\n";
    os << "time       " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
    return os.str();
}

} // namespace moller::app
