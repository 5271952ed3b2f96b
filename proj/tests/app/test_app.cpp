#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "app/commands.hpp"
#include "support/support.hpp"

#include <fstream>
#include <sstream>

using namespace moller;
using namespace moller::app;
using moller::testing::q;

namespace {

std::string model_path(const std::string& name) { return std::string(MOLLER_MODELS_DIR) + "/" + name + ".json"; }

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "moller");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

Json without_timing(Json j)
{
    j.erase("timing");
    return j;
}

std::string minimal_cs_text()
{
    std::ifstream in(model_path("cs_sl2_minimal"));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("app")
{
    TEST_CASE("machine reports round-trip exactly")
    {
        for (const char* name : {"kg1", "kg3", "kg_singular", "cs_sl2_minimal", "cs_sl2_inflated", "cs_abelian",
                                 "custom_pair", "ym_sl2_circle12"}) {
            CAPTURE(name);
            Report r = cmd_check(load_model_file(model_path(name)), Options{});
            const std::string text = render_machine(r);
            Json j = parse_document(text, SchemaKind::Report);
            Report back = report_from_json(j);
            CHECK(render_machine(back) == text);
            CHECK(to_json(back) == to_json(r));
        }
    }

    TEST_CASE("cohomology and check reports validate and round-trip")
    {
        LoadedModel m = load_model_file(model_path("cs_sl2_minimal"));
        Options o;
        o.weight_max = 4;
        Report r = cmd_cohomology(m, o);
        REQUIRE(r.cohomology);
        const std::string text = render_machine(r);
        CHECK(render_machine(report_from_json(parse_document(text, SchemaKind::Report))) == text);
    }

    TEST_CASE("certificates survive the round trip")
    {
        Report r = cmd_check(load_model_file(model_path("cs_sl2_inflated")), Options{});
        REQUIRE(r.tower);
        REQUIRE(r.tower->verdict == "OBSTRUCTED-AT-ORDER");
        const auto& o1 = r.tower->orders.front();
        REQUIRE(o1.certificate);
        CHECK(o1.certificate->valid);
        Report back = report_from_json(Json::parse(render_machine(r)));
        const auto& c = *back.tower->orders.front().certificate;
        CHECK(c.pairing == o1.certificate->pairing);
        REQUIRE(c.functional.size() == o1.certificate->functional.size());
        for (std::size_t i = 0; i < c.functional.size(); ++i) {
            REQUIRE(c.functional[i].entries.size() == o1.certificate->functional[i].entries.size());
            for (std::size_t e = 0; e < c.functional[i].entries.size(); ++e)
                CHECK(c.functional[i].entries[e].value == o1.certificate->functional[i].entries[e].value);
        }
    }

    TEST_CASE("reports are deterministic apart from timing")
    {
        for (const char* name : {"kg3", "cs_sl2_inflated"}) {
            auto a = run({"check", model_path(name), "--emit", "machine"});
            auto b = run({"check", model_path(name), "--emit", "machine"});
            CHECK(a.code == 0);
            CHECK(without_timing(Json::parse(a.out)) == without_timing(Json::parse(b.out)));
        }
    }

    TEST_CASE("exit codes")
    {
        CHECK(run({"check", model_path("kg1")}).code == ExitOk);
        CHECK(run({"check", model_path("cs_sl2_minimal"), "--route", "tower"}).code == ExitOk);
        CHECK(run({"check", model_path("cs_sl2_minimal"), "--route", "hpt"}).code == ExitOk);
        CHECK(run({"check", model_path("cs_sl2_mutated")}).code == ExitInvariant);
        CHECK(run({"mc", model_path("cs_sl2_mutated")}).code == ExitInvariant);
        CHECK(run({"jacobi", model_path("cs_sl2_mutated")}).code == ExitInvariant);
        CHECK(run({"jacobi", model_path("cs_sl2_minimal")}).code == ExitOk);
        CHECK(run({"check", "/nonexistent/model.json"}).code == ExitParse);
        CHECK(run({"check", model_path("kg1"), "--mode", "bogus"}).code == ExitParse);
        CHECK(run({"check", model_path("kg1"), "--weight", "0"}).code == ExitParse);
        CHECK(run({"frobnicate"}).code == ExitParse);
    }

    TEST_CASE("malformed and invalid documents")
    {
        CHECK_THROWS_AS(load_model_text("{"), ParseError);
        CHECK_THROWS_AS(load_model_text(R"({"format":"moller-model/1","kind":"kg","name":"x"})"), SchemaError);
        CHECK_THROWS_AS(load_model_text(R"({"format":"moller-model/2","kind":"kg","name":"x",
            "parameters":{"k":1,"N":3,"d":[["1"]]}})"),
                        SchemaError);
        // Rationals are strings "p/q" with a positive denominator.
        CHECK_THROWS_AS(load_model_text(R"({"format":"moller-model/1","kind":"kg","name":"x",
            "parameters":{"k":1,"N":3,"d":[["1/-2"]]}})"),
                        SchemaError);
        CHECK_THROWS_AS(load_model_text(R"({"format":"moller-model/1","kind":"kg","name":"x",
            "parameters":{"k":1,"N":3,"d":[[2]]}})"),
                        SchemaError);
        CHECK_NOTHROW(load_model_text(R"({"format":"moller-model/1","kind":"kg","name":"x",
            "parameters":{"k":1,"N":3,"d":[["-4/6"]]}})"));
    }

    TEST_CASE("model invariants")
    {
        // d of the wrong shape
        CHECK_THROWS_AS(load_model_text(R"({"format":"moller-model/1","kind":"kg","name":"x",
            "parameters":{"k":2,"N":3,"d":[["1"]]}})"),
                        ModelInvariantError);
        // bracket table that is not antisymmetric
        CHECK_THROWS_AS(load_model_text(R"({"format":"moller-model/1","kind":"cs","name":"x",
            "parameters":{"lie_algebra":{"basis":["x","y"],"brackets":[
                {"left":"x","right":"y","value":{"x":"1"}},{"left":"y","right":"x","value":{"x":"1"}}]},
              "variant":"minimal"}})"),
                        ModelInvariantError);
        Json doc = Json::parse(minimal_cs_text());
        doc["parameters"]["lie_algebra"]["brackets"][0]["value"] = Json{{"q", "1"}};
        CHECK_THROWS_AS(model_from_json(doc), ModelInvariantError);
        Json ym = Json::parse(minimal_cs_text());
        ym["kind"] = "ym";
        ym["parameters"].erase("variant");
        ym["parameters"]["vertices"] = 2;
        CHECK_THROWS_AS(load_model_text(ym.dump()), ModelInvariantError);
    }

    TEST_CASE("routes that disagree give exit 4")
    {
        Report r;
        r.hpt = HptSection{"NON-EXISTENCE", {}, {}, std::nullopt};
        r.tower = TowerSection{"tower", "EXISTS-UP-TO", 0, true, {}, {}};
        CHECK(reconcile_routes(r, true) == ExitInconsistent);
        r.tower->verdict = "OBSTRUCTED-AT-ORDER";
        r.tower->obstructed_order = 2;
        CHECK(reconcile_routes(r, true) == ExitInconsistent);
        r.tower->obstructed_order = 1;
        CHECK(reconcile_routes(r, true) == ExitOk);
        CHECK(*r.verdict == "NON-EXISTENCE");
        CHECK(reconcile_routes(r, false) == ExitInconsistent);
        r.tower->verdict = "INCONCLUSIVE";
        CHECK(reconcile_routes(r, true) == ExitOk);
        r.hpt->verdict = "INCONCLUSIVE";
        r.tower->verdict = "EXISTS-UP-TO";
        CHECK(reconcile_routes(r, true) == ExitOk);
        CHECK(*r.verdict == "EXISTS-UP-TO");
    }

    TEST_CASE("a custom model reproduces the CS bracket")
    {
        CSModel cs = cs_model(sl2(), CSVariant::Minimal);
        const LInftyStructure& l = cs.structure;
        const SymPower& p2 = l.power(2);
        const GeneratorTable& gens = p2.table();
        GradedMap l2 = l.bracket(2);

        Json comps = Json::array();
        for (int k : l.space()->degrees())
            comps.push_back(Json{{"degree", k}, {"labels", l.space()->labels(k)}});
        Json brackets = Json::array();
        for (std::uint32_t a = 0; a < gens.size(); ++a)
            for (std::uint32_t b = a; b < gens.size(); ++b) {
                int td = 0;
                SparseVec v = evaluate_bracket(l2, p2, {a, b}, td);
                if (v.empty())
                    continue;
                Json value = Json::object();
                for (const auto& e : v)
                    value[l.space()->labels(td).at(e.index)] = to_string(e.value);
                brackets.push_back(Json{{"inputs", {gens.label(a), gens.label(b)}}, {"value", value}});
            }
        Json doc{{"format", "moller-model/1"},
                 {"kind", "custom"},
                 {"name", "cs_by_hand"},
                 {"parameters", {{"components", comps}, {"brackets", brackets}}}};
        LoadedModel m = load_model_text(doc.dump());
        CHECK(m.structure.bracket(2) == l2);

        // l2(c_h, c_e) = -[h, e] = -2 c_e
        const std::uint32_t ch = gens.index(-1, 2), ce = gens.index(-1, 0);
        int td = 0;
        CHECK(evaluate_bracket(m.structure.bracket(2), m.structure.power(2), {ch, ce}, td) == SparseVec{{0, q(-2)}});

        Report r = cmd_check(m, Options{});
        CHECK(r.exit_code == ExitOk);
        CHECK(*r.verdict == "NON-EXISTENCE");
    }

    TEST_CASE("text output")
    {
        auto kg = run({"check", model_path("kg1")});
        CHECK(kg.out.find("EXISTS-UP-TO(4,6)") != std::string::npos);
        CHECK(kg.out.find("1/2 λ^2 φ*^3") != std::string::npos);
        auto cs = run({"check", model_path("cs_sl2_inflated")});
        CHECK(cs.out.find("l~2([c_h], [c_e]) = -2[c_e]") != std::string::npos);
        auto coh = run({"cohomology", model_path("cs_sl2_minimal"), "--emit", "machine"});
        Json j = Json::parse(coh.out);
        std::vector<std::size_t> perturbed;
        for (const auto& row : j["cohomology"]["rows"])
            perturbed.push_back(row["perturbed"].get<std::size_t>());
        CHECK(perturbed == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1});
    }

    TEST_CASE("truncation flags override the model file")
    {
        LoadedModel m = load_model_file(model_path("kg1"));
        Options o;
        CHECK(resolved_weight(m, o) == 6);
        CHECK(resolved_order(m, o) == 4);
        o.weight = 3;
        CHECK(resolved_weight(m, o) == 3);
        LoadedModel cs = load_model_file(model_path("cs_sl2_minimal"));
        CHECK(resolved_weight(cs, Options{}) == 4);
        CHECK(resolved_order(cs, Options{}) == 3);
    }
}
