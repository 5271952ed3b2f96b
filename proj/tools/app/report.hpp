#pragma once

#include "moller/rational.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moller::app {

using Json = nlohmann::ordered_json;

struct BlockEntry {
    std::size_t row = 0, col = 0;
    Rational value;
};

struct MatrixBlock {
    int degree = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<BlockEntry> entries;
};

// Label -> coefficient, in basis order.
using LabeledVector = std::vector<std::pair<std::string, Rational>>;

struct CheckEntry {
    int index = 0; // arity for jacobi, lambda order for mc
    bool holds = true;
    std::string witness;
    std::optional<std::size_t> excluded;
};

struct CertificateEntry {
    int source_weight = 0, target_weight = 0;
    std::string source_monomial;
    Rational pairing;
    bool valid = false;
    std::vector<MatrixBlock> functional, rhs;
};

struct TowerOrder {
    int order = 0;
    std::string status;
    std::size_t blocks_solved = 0, blocks_skipped = 0;
    std::optional<CertificateEntry> certificate;
};

struct KTerm {
    int order = 0;
    std::string monomial;
    Rational coefficient;
};

struct KImage {
    std::string generator;
    std::vector<KTerm> terms;
};

struct TowerSection {
    std::string method; // splitting | tower
    std::string verdict;
    int obstructed_order = 0;
    bool verified = false;
    std::vector<TowerOrder> orders;
    std::vector<KImage> K;
};

struct Witness {
    std::string a, b;
    LabeledVector value;
    std::optional<Rational> eigenvalue;
};

struct HptSection {
    std::string verdict;
    std::vector<std::string> h_minus1;
    MatrixBlock bracket;
    std::optional<Witness> witness;
};

struct CohomologyEntry {
    int weight = 0;
    std::size_t full = 0, free = 0, kernel = 0, perturbed = 0;
    bool excluded = false;
};

struct CohomologySection {
    int degree = 0;
    bool filtered_only = false;
    std::vector<CohomologyEntry> rows;
};

struct Report {
    std::string tool = "moller";
    std::string tool_version;
    std::string compiler;
    std::string command;
    std::string model_name, model_kind;
    int W = 0, L = 0;
    std::string mode = "algebra", route = "both";
    std::optional<std::string> verdict;
    std::optional<std::string> verdict_text;
    int exit_code = 0;
    bool complex_ok = true;
    std::vector<CheckEntry> jacobi, mc;
    std::optional<TowerSection> tower;
    std::optional<HptSection> hpt;
    std::optional<CohomologySection> cohomology;
    std::vector<std::string> notes;
    double seconds = 0;
};

Json to_json(const Report& r);
// Throws SchemaError on a document that does not have the report layout.
Report report_from_json(const Json& j);

std::string render_machine(const Report& r);
std::string render_text(const Report& r);

// Canonical version string of the toolchain.
std::string toolchain_version();
std::string compiler_id();

} // namespace moller::app
