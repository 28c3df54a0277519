#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul::cli {

/// Invalid request: bad JSON, schema violation, unparsable payload or
/// incompatible caps. `where` names the JSON pointer or the line/column.
struct InputError : std::invalid_argument {
    InputError(const std::string& loc, const std::string& why)
        : std::invalid_argument(loc.empty() ? why : loc + ": " + why), where(loc) {}
    std::string where;
};

/// The schema shipped in docs/request.schema.json (compiled in).
const nlohmann::json& request_schema();

/// Validates `doc` against the schema subset in use (type, const, enum,
/// required, properties, additionalProperties, items, minItems, minimum,
/// maximum, pattern, oneOf). Throws InputError naming the JSON pointer of
/// the first violation.
void validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema);

struct Caps {
    /// Polynomial degree of the form windows, generator factors per letter
    /// and weight of Koszul slices.
    int degree_cap = 2;
    /// Largest word length (arity) for coderivation checks.
    int arity_cap = 4;
    /// lift_mc target order; the base is Q[t]/(t^{order+1}).
    int truncation_order = 4;
};

struct OperatorTerm {
    std::string coefficient;
    std::vector<std::string> derivatives;
};

struct DGLADesc {
    struct Basis {
        std::string name;
        int degree = 0;
    };
    struct BracketEntry {
        std::string left, right, value;
    };
    std::vector<Basis> basis;
    std::vector<std::pair<std::string, std::string>> differential;
    std::vector<BracketEntry> bracket;
};

struct SubcomplexDesc {
    std::string kind;
    int degree = 0;
    std::vector<std::string> items;
};

struct CheckRequest {
    std::string model_kind;  // "de_rham" or "dgla"
    int n = 0;
    DGLADesc dgla;
    std::optional<std::string> bivector;
    std::vector<std::pair<std::string, std::string>> cartan_pairs;
    std::vector<OperatorTerm> op;
    std::optional<SubcomplexDesc> subcomplex;
    std::vector<std::string> first_order;
    std::vector<std::string> suites;
    Caps caps;
};

/// Parses and schema-validates a request document.
CheckRequest parse_request(std::string_view text);
CheckRequest request_from_json(const nlohmann::json& doc);

const std::vector<std::string>& known_suites();

}  // namespace koszul::cli
