#pragma once

#include "moller/linfty.hpp"

#include "report.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace moller::app {

// Malformed JSON text (exit 2).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed document that violates a shipped schema (exit 2).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The model described by a valid document fails a mathematical invariant (exit 3).
class ModelInvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SchemaKind { Model, Report };

const std::string& schema_text(SchemaKind kind);

// Parses and validates against the shipped schema.
Json parse_document(const std::string& text, SchemaKind kind);

struct LoadedModel {
    std::string name;
    std::string kind;
    std::optional<int> W, L;
    LInftyStructure structure;
    DeformationRetract retract;
    // False for the Yang-Mills initial-data reduction, which keeps only the ghost bracket.
    bool full_linfty = true;
    std::vector<std::string> notes;
};

LoadedModel model_from_json(const Json& doc);
LoadedModel load_model_text(const std::string& text);
LoadedModel load_model_file(const std::string& path);

} // namespace moller::app
