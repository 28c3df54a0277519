#include "koszul/cli/request.hpp"

#include <regex>

namespace koszul::cli {

namespace detail {
extern const char* const kRequestSchema;
}

using nlohmann::json;

namespace {

std::string type_of(const json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "boolean";
    if (v.is_number_integer()) return "integer";
    if (v.is_number()) return "number";
    return "null";
}

bool type_matches(const json& v, const std::string& t) {
    const std::string actual = type_of(v);
    return actual == t || (t == "number" && actual == "integer");
}

std::string where(const std::string& ptr) { return "field " + (ptr.empty() ? std::string("/") : ptr); }

void validate(const json& v, const json& s, const std::string& ptr) {
    if (s.contains("oneOf")) {
        std::vector<InputError> errors;
        int matches = 0;
        for (const auto& alt : s["oneOf"]) {
            try {
                validate(v, alt, ptr);
                ++matches;
            } catch (const InputError& e) {
                errors.push_back(e);
            }
        }
        if (matches == 1) return;
        if (matches > 1) throw InputError(where(ptr), "matches more than one alternative");
        // Report the alternative whose discriminating "kind" matched, if any.
        if (v.is_object() && v.contains("kind")) {
            for (std::size_t i = 0; i < s["oneOf"].size(); ++i) {
                const auto& alt = s["oneOf"][i];
                if (alt.contains("properties") && alt["properties"].contains("kind") &&
                    alt["properties"]["kind"].value("const", json()) == v["kind"])
                    throw errors[i];
            }
            throw InputError(where(ptr + "/kind"), "unknown kind " + v["kind"].dump());
        }
        throw InputError(where(ptr), "does not match any allowed form");
    }
    if (s.contains("const") && v != s["const"])
        throw InputError(where(ptr), "expected " + s["const"].dump() + ", got " + v.dump());
    if (s.contains("enum")) {
        bool ok = false;
        for (const auto& e : s["enum"]) ok = ok || e == v;
        if (!ok) throw InputError(where(ptr), "value " + v.dump() + " is not one of " + s["enum"].dump());
    }
    if (s.contains("type") && !type_matches(v, s["type"].get<std::string>()))
        throw InputError(where(ptr), "expected " + s["type"].get<std::string>() + ", got " + type_of(v));
    if (v.is_number()) {
        if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>())
            throw InputError(where(ptr), "must be at least " + s["minimum"].dump());
        if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>())
            throw InputError(where(ptr), "must be at most " + s["maximum"].dump());
    }
    if (v.is_string() && s.contains("pattern") &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
        throw InputError(where(ptr), "does not match " + s["pattern"].get<std::string>());
    if (v.is_object()) {
        for (const auto& r : s.value("required", json::array()))
            if (!v.contains(r.get<std::string>()))
                throw InputError(where(ptr + "/" + r.get<std::string>()), "required field is missing");
        const json props = s.value("properties", json::object());
        for (const auto& [k, val] : v.items()) {
            const std::string child = ptr + "/" + k;
            if (props.contains(k)) {
                validate(val, props[k], child);
            } else if (s.contains("additionalProperties")) {
                const auto& ap = s["additionalProperties"];
                if (ap.is_boolean()) {
                    if (!ap.get<bool>()) throw InputError(where(child), "unknown field");
                } else {
                    validate(val, ap, child);
                }
            }
        }
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
            throw InputError(where(ptr), "needs at least " + s["minItems"].dump() + " item(s)");
        if (s.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], s["items"], ptr + "/" + std::to_string(i));
    }
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const nlohmann::json& request_schema() {
    static const json schema = json::parse(detail::kRequestSchema);
    return schema;
}

void validate_against_schema(const json& doc, const json& schema) { validate(doc, schema, ""); }

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> suites{"cartan", "quasi-bv", "poisson", "koszul", "formality", "subcomplex", "mc"};
    return suites;
}

CheckRequest parse_request(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte just past the offending token.
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw InputError(line_column(text, at), "malformed JSON: " + msg);
    }
    return request_from_json(doc);
}

CheckRequest request_from_json(const json& doc) {
    validate_against_schema(doc, request_schema());
    CheckRequest r;
    const json& model = doc["model"];
    r.model_kind = model["kind"].get<std::string>();
    if (r.model_kind == "de_rham") {
        r.n = model["n"].get<int>();
    } else {
        for (const auto& b : model["basis"]) r.dgla.basis.push_back({b["name"].get<std::string>(), b["degree"].get<int>()});
        // value() returns by value; keep the copies alive while iterating.
        const json diff = model.value("differential", json::object());
        const json brackets = model.value("bracket", json::array());
        for (const auto& [k, v] : diff.items()) r.dgla.differential.emplace_back(k, v.get<std::string>());
        for (const auto& e : brackets)
            r.dgla.bracket.push_back({e["left"].get<std::string>(), e["right"].get<std::string>(), e["value"].get<std::string>()});
    }
    if (doc.contains("bivector")) r.bivector = doc["bivector"].get<std::string>();
    const json pairs = doc.value("cartan_pairs", json::array());
    const json op = doc.value("operator", json::array());
    for (const auto& p : pairs)
        r.cartan_pairs.emplace_back(p["eta"].get<std::string>(), p["mu"].get<std::string>());
    for (const auto& t : op)
        r.op.push_back({t["coefficient"].get<std::string>(), t.value("derivatives", std::vector<std::string>{})});
    if (doc.contains("subcomplex")) {
        const json& b = doc["subcomplex"];
        SubcomplexDesc d;
        d.kind = b["kind"].get<std::string>();
        if (d.kind == "degree_at_least") d.degree = b["degree"].get<int>();
        if (d.kind == "ideal") d.items = b["generators"].get<std::vector<std::string>>();
        if (d.kind == "span") d.items = b["elements"].get<std::vector<std::string>>();
        r.subcomplex = d;
    }
    r.first_order = doc.value("first_order", std::vector<std::string>{});
    r.suites = doc.value("suites", std::vector<std::string>{});
    if (doc.contains("caps")) {
        const json& c = doc["caps"];
        r.caps.degree_cap = c.value("degree_cap", r.caps.degree_cap);
        r.caps.arity_cap = c.value("arity_cap", r.caps.arity_cap);
        r.caps.truncation_order = c.value("truncation_order", r.caps.truncation_order);
    }
    return r;
}

}  // namespace koszul::cli
