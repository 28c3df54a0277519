#include "koszul/cli/report.hpp"

#include <stdexcept>

namespace koszul::cli {

using nlohmann::json;

Format parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + name + "' (expected text or json)");
}

json certificate_to_json(const Certificate& c) {
    json checks = json::array();
    for (const auto& ch : c.checks) {
        json w = json::array();
        for (const auto& e : ch.witness) w.push_back({{"label", e.label}, {"value", e.value}});
        checks.push_back({{"name", ch.name},
                          {"verdict", ch.passed ? "pass" : "fail"},
                          {"cases", ch.cases},
                          {"detail", ch.detail},
                          {"witness", w}});
    }
    return {{"suite", c.suite}, {"verdict", c.passed() ? "pass" : "fail"}, {"window", c.window}, {"checks", checks}};
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.suite = j.at("suite").get<std::string>();
    c.window = j.at("window").get<std::map<std::string, std::string>>();
    for (const auto& ch : j.at("checks")) {
        Check k;
        k.name = ch.at("name").get<std::string>();
        const std::string v = ch.at("verdict").get<std::string>();
        if (v != "pass" && v != "fail") throw std::invalid_argument("report: bad verdict '" + v + "'");
        k.passed = v == "pass";
        k.cases = ch.at("cases").get<std::size_t>();
        k.detail = ch.at("detail").get<std::string>();
        for (const auto& e : ch.at("witness"))
            k.witness.push_back({e.at("label").get<std::string>(), e.at("value").get<std::string>()});
        c.checks.push_back(std::move(k));
    }
    if ((j.at("verdict") == "pass") != c.passed()) throw std::invalid_argument("report: certificate verdict disagrees with its checks");
    return c;
}

json report_to_json(const Report& r) {
    json certs = json::array();
    for (const auto& c : r.certificates) certs.push_back(certificate_to_json(c));
    return {{"schema", r.schema},
            {"verdict", r.passed() ? "pass" : "fail"},
            {"model", r.model},
            {"caps", r.caps},
            {"certificates", certs},
            {"meta", {{"wall_clock_ms", r.meta.wall_clock_ms}, {"toolchain", r.meta.toolchain}}}};
}

Report report_from_json(const json& j) {
    try {
        Report r;
        r.schema = j.at("schema").get<std::string>();
        if (r.schema != kSchemaVersion) throw std::invalid_argument("report: unsupported schema '" + r.schema + "'");
        r.model = j.at("model").get<std::map<std::string, std::string>>();
        r.caps = j.at("caps").get<std::map<std::string, int>>();
        for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
        r.meta.wall_clock_ms = j.at("meta").at("wall_clock_ms").get<long>();
        r.meta.toolchain = j.at("meta").at("toolchain").get<std::string>();
        if ((j.at("verdict") == "pass") != r.passed()) throw std::invalid_argument("report: verdict disagrees with its certificates");
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
}

namespace {

std::string text_report(const Report& r) {
    std::string out = "koszul-verify report (" + r.schema + ")\n";
    out += "model:";
    for (const auto& [k, v] : r.model) out += " " + k + "=" + v + ";";
    out += "\ncaps:";
    for (const auto& [k, v] : r.caps) out += " " + k + "=" + std::to_string(v) + ";";
    out += "\n";
    for (const auto& c : r.certificates) {
        out += "\nsuite " + c.suite + ": " + (c.passed() ? "PASS" : "FAIL") + "\n";
        if (!c.window.empty()) {
            out += "  window:";
            for (const auto& [k, v] : c.window) out += " " + k + "=" + v + ";";
            out += "\n";
        }
        for (const auto& ch : c.checks) {
            out += std::string("  [") + (ch.passed ? "pass" : "FAIL") + "] " + ch.name + " (" +
                   std::to_string(ch.cases) + " cases)";
            if (!ch.detail.empty()) out += " - " + ch.detail;
            out += "\n";
            for (const auto& w : ch.witness) out += "      " + w.label + " = " + w.value + "\n";
        }
    }
    out += std::string("\nverdict: ") + (r.passed() ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace

std::string emit_report(const Report& r, Format format) {
    if (format == Format::Text) return text_report(r);
    return report_to_json(r).dump(2) + "\n";
}

Report parse_report(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
    return report_from_json(j);
}

}  // namespace koszul::cli
