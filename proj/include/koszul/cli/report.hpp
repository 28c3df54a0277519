#pragma once

#include "koszul/core/certificate.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace koszul::cli {

inline constexpr const char* kSchemaVersion = "koszul-verify/1";

/// Run-dependent data, kept apart so reports compare byte-for-byte without it.
struct Meta {
    long wall_clock_ms = 0;
    std::string toolchain;
    friend bool operator==(const Meta&, const Meta&) = default;
};

struct Report {
    std::string schema = kSchemaVersion;
    /// kind, n, bivector, ... as given in the request.
    std::map<std::string, std::string> model;
    std::map<std::string, int> caps;
    std::vector<Certificate> certificates;
    Meta meta;

    bool passed() const {
        for (const auto& c : certificates)
            if (!c.passed()) return false;
        return true;
    }
    friend bool operator==(const Report&, const Report&) = default;
};

enum class Format { Text, Json };
/// "text" or "json"; anything else throws std::invalid_argument.
Format parse_format(const std::string& name);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const Report& r);
/// Inverse of report_to_json; throws std::invalid_argument on a malformed document.
Report report_from_json(const nlohmann::json& j);

/// Text has no run-dependent content; JSON carries it under "meta".
std::string emit_report(const Report& r, Format format);
Report parse_report(std::string_view json_text);

}  // namespace koszul::cli
