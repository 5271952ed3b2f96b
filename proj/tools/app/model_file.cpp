#include "model_file.hpp"

#include "moller/errors.hpp"
#include "moller/models.hpp"

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace moller::app {

namespace {

const rapidjson::SchemaDocument& compiled_schema(SchemaKind kind)
{
    auto make = [](SchemaKind k) {
        rapidjson::Document d;
        d.Parse(schema_text(k).c_str());
        if (d.HasParseError())
            throw std::logic_error("shipped schema does not parse");
        return std::make_unique<rapidjson::SchemaDocument>(d);
    };
    static const auto model = make(SchemaKind::Model);
    static const auto report = make(SchemaKind::Report);
    return kind == SchemaKind::Model ? *model : *report;
}

std::string pointer_string(const rapidjson::Pointer& p)
{
    rapidjson::StringBuffer sb;
    p.StringifyUriFragment(sb);
    return sb.GetString();
}

Rational rational_of(const Json& j)
{
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

SparseMatrix matrix_of(const Json& rows)
{
    std::vector<std::vector<Rational>> dense;
    for (const auto& row : rows) {
        std::vector<Rational> r;
        for (const auto& x : row)
            r.push_back(rational_of(x));
        if (!dense.empty() && r.size() != dense.front().size())
            throw SchemaError("matrix rows have different lengths");
        dense.push_back(std::move(r));
    }
    if (dense.empty())
        return SparseMatrix(0, 0);
    return SparseMatrix::from_dense(dense);
}

std::size_t index_of(const std::vector<std::string>& labels, const std::string& l, const char* what)
{
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l)
            return i;
    throw ModelInvariantError(std::string("unknown ") + what + " '" + l + "'");
}

LieAlgebra lie_of(const Json& j)
{
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    if (std::set<std::string>(basis.begin(), basis.end()).size() != basis.size())
        throw ModelInvariantError("Lie algebra basis labels repeat");
    const std::size_t n = basis.size();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> table;
    for (const auto& b : j.at("brackets")) {
        const std::size_t x = index_of(basis, b.at("left").get<std::string>(), "basis element");
        const std::size_t y = index_of(basis, b.at("right").get<std::string>(), "basis element");
        std::vector<Rational> v(n);
        for (const auto& [label, c] : b.at("value").items())
            v[index_of(basis, label, "basis element")] = rational_of(c);
        if (x == y) {
            for (const auto& c : v)
                if (c != 0)
                    throw ModelInvariantError("Lie table is not antisymmetric: [" + basis[x] + ", " + basis[x] +
                                              "] != 0");
            continue;
        }
        auto [it, fresh] = table.emplace(std::make_pair(x, y), v);
        if (!fresh && it->second != v)
            throw ModelInvariantError("bracket [" + basis[x] + ", " + basis[y] + "] given twice with different values");
    }
    LieAlgebra g = LieAlgebra::zero(basis);
    for (const auto& [xy, v] : table) {
        auto other = table.find({xy.second, xy.first});
        if (other != table.end())
            for (std::size_t k = 0; k < n; ++k)
                if (other->second[k] != -v[k])
                    throw ModelInvariantError("Lie table is not antisymmetric on (" + basis[xy.first] + ", " +
                                              basis[xy.second] + ")");
        for (std::size_t k = 0; k < n; ++k)
            if (v[k] != 0)
                g.set(xy.first, xy.second, k, v[k]);
    }
    return g;
}

LoadedModel load_kg(const Json& p)
{
    const auto k = p.at("k").get<std::size_t>();
    const int n = p.at("N").get<int>();
    SparseMatrix d = matrix_of(p.at("d"));
    LoadedModel m;
    try {
        KGModel kg = kg_toy(k, d, n);
        m.structure = kg.structure;
        m.notes.push_back(kg.surjective ? "d is surjective" : "d is not surjective");
    } catch (const ShapeMismatch& e) {
        throw ModelInvariantError(e.what());
    }
    m.retract = retract_to_cohomology(m.structure.complex());
    return m;
}

LoadedModel load_cs(const Json& p)
{
    LieAlgebra g = lie_of(p.at("lie_algebra"));
    const std::string variant = p.at("variant").get<std::string>();
    const std::size_t pairs = p.contains("pairs") ? p.at("pairs").get<std::size_t>() : 2;
    LoadedModel m;
    if (!g.jacobi()) {
        // Keep the broken bracket on the minimal complex so the checks can report a witness.
        std::vector<std::string> ghosts, fields;
        for (const auto& x : g.labels) {
            ghosts.push_back("c_" + x);
            fields.push_back("A_" + x);
        }
        m.structure = LInftyStructure(CochainComplex::zero_differential(make_space({{-1, ghosts}, {0, fields}})), 2);
        m.structure.set_bracket(2, shifted_lie_bracket(g, m.structure.power(2)));
        m.retract = identity_retract(m.structure.complex());
        m.notes.push_back("Lie table fails the Jacobi identity; using the minimal complex");
        return m;
    }
    CSModel cs = cs_model(g, variant == "minimal" ? CSVariant::Minimal : CSVariant::Inflated, pairs);
    m.structure = cs.structure;
    m.retract = cs.retract;
    return m;
}

LoadedModel load_ym(const Json& p)
{
    LieAlgebra g = lie_of(p.at("lie_algebra"));
    if (!g.jacobi())
        throw ModelInvariantError("Lie table fails the Jacobi identity");
    LoadedModel m;
    try {
        YMModel ym = ym_initial_data_model({p.at("vertices").get<int>()}, g);
        m.structure = ym.structure;
        m.retract = ym.retract;
    } catch (const TooFewVertices& e) {
        throw ModelInvariantError(e.what());
    }
    m.full_linfty = false;
    m.notes.push_back("initial-data reduction: only the ghost bracket is kept, so the tower route does not apply");
    return m;
}

LoadedModel load_custom(const Json& p)
{
    std::map<int, std::vector<std::string>> comps;
    std::set<std::string> seen;
    for (const auto& c : p.at("components")) {
        const int k = c.at("degree").get<int>();
        if (comps.count(k))
            throw SchemaError("degree " + std::to_string(k) + " listed twice");
        for (const auto& l : c.at("labels")) {
            if (!seen.insert(l.get<std::string>()).second)
                throw ModelInvariantError("label '" + l.get<std::string>() + "' repeats");
            comps[k].push_back(l.get<std::string>());
        }
    }
    SpacePtr s = make_space(comps);
    GradedMap d(s, s, 1);
    if (p.contains("differential"))
        for (const auto& b : p.at("differential")) {
            const int k = b.at("degree").get<int>();
            SparseMatrix blk = matrix_of(b.at("matrix"));
            if (blk.rows() != s->dim(k + 1) || blk.cols() != s->dim(k))
                throw ModelInvariantError("differential block at degree " + std::to_string(k) + " has the wrong shape");
            d.set_block(k, blk);
        }
    d.prune();

    int max_arity = 1;
    if (p.contains("brackets"))
        for (const auto& b : p.at("brackets"))
            max_arity = std::max(max_arity, static_cast<int>(b.at("inputs").size()));

    LoadedModel m;
    m.structure = LInftyStructure(CochainComplex(s, d), max_arity);
    auto locate = [&](const std::string& label) -> std::pair<int, std::size_t> {
        for (const auto& [k, labels] : comps)
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == label)
                    return {k, i};
        throw ModelInvariantError("unknown label '" + label + "'");
    };

    std::map<int, GradedMap> brackets;
    if (p.contains("brackets"))
        for (const auto& b : p.at("brackets")) {
            const int n = static_cast<int>(b.at("inputs").size());
            const SymPower& pw = m.structure.power(n);
            const GeneratorTable& gens = pw.table();
            std::vector<std::uint32_t> word;
            for (const auto& in : b.at("inputs")) {
                auto [k, i] = locate(in.get<std::string>());
                word.push_back(gens.index(k, i));
            }
            const int sign = canonicalize(word, gens);
            if (sign == 0)
                throw ModelInvariantError("bracket inputs repeat an odd element");
            auto loc = pw.find(word);
            // l_n(e_m) = m! times the stored coefficient
            Rational factorial(1);
            for (std::size_t a = 0, run = 1; a < word.size(); ++a, ++run) {
                if (a > 0 && word[a] != word[a - 1])
                    run = 1;
                factorial *= static_cast<long>(run);
            }
            auto it = brackets.try_emplace(n, GradedMap(pw.space(), s, 1)).first;
            const int out_degree = loc->first + 1;
            SparseMatrix blk = it->second.find_block(loc->first) ? it->second.block(loc->first)
                                                                  : SparseMatrix(s->dim(out_degree), pw.space()->dim(loc->first));
            for (const auto& [label, c] : b.at("value").items()) {
                auto [k, i] = locate(label);
                if (k != out_degree)
                    throw ModelInvariantError("bracket value '" + label + "' has the wrong degree");
                const Rational stored = rational_of(c) * sign / factorial;
                const Rational old = blk.at(i, loc->second);
                if (old != 0 && old != stored)
                    throw ModelInvariantError("bracket on " + monomial_label(word, gens) + " given twice");
                blk.set(i, loc->second, stored);
            }
            it->second.set_block(loc->first, std::move(blk));
        }
    for (auto& [n, l] : brackets) {
        l.prune();
        m.structure.set_bracket(n, std::move(l));
    }
    const bool hodge = p.contains("retract") && p.at("retract").get<std::string>() == "hodge";
    if (!verify_complex(m.structure.complex()))
        m.retract = identity_retract(m.structure.complex());
    else
        m.retract = hodge ? hodge_retract(m.structure.complex()) : retract_to_cohomology(m.structure.complex());
    return m;
}

} // namespace

Json parse_document(const std::string& text, SchemaKind kind)
{
    rapidjson::Document doc;
    doc.Parse(text.c_str(), text.size());
    if (doc.HasParseError())
        throw ParseError(std::string("JSON parse error at offset ") + std::to_string(doc.GetErrorOffset()) + ": " +
                         rapidjson::GetParseError_En(doc.GetParseError()));
    rapidjson::SchemaValidator validator(compiled_schema(kind));
    if (!doc.Accept(validator))
        throw SchemaError("schema violation at '" + pointer_string(validator.GetInvalidDocumentPointer()) +
                          "' (keyword '" + validator.GetInvalidSchemaKeyword() + "', schema '" +
                          pointer_string(validator.GetInvalidSchemaPointer()) + "')");
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
    }
}

LoadedModel model_from_json(const Json& doc)
{
    const std::string kind = doc.at("kind").get<std::string>();
    const Json& p = doc.at("parameters");
    LoadedModel m;
    if (kind == "kg")
        m = load_kg(p);
    else if (kind == "cs")
        m = load_cs(p);
    else if (kind == "ym")
        m = load_ym(p);
    else
        m = load_custom(p);
    m.kind = kind;
    m.name = doc.at("name").get<std::string>();
    if (doc.contains("truncation")) {
        const Json& t = doc.at("truncation");
        if (t.contains("W"))
            m.W = t.at("W").get<int>();
        if (t.contains("L"))
            m.L = t.at("L").get<int>();
    }
    return m;
}

LoadedModel load_model_text(const std::string& text)
{
    return model_from_json(parse_document(text, SchemaKind::Model));
}

LoadedModel load_model_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_model_text(ss.str());
}

} // namespace moller::app
