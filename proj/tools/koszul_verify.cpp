// koszul-verify: run verification suites on a JSON request, print a certificate.
#include "koszul/cli/run.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace koszul::cli;

namespace {

int fail(int code, const std::string& msg) {
    std::cerr << "koszul-verify: " << (code == kInternalError ? "internal error: " : "error: ") << msg << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of Koszul brackets, formality witnesses and Maurer-Cartan lifts."};
    std::string model_path, format_name = "text", out_path;
    std::vector<std::string> suites;
    std::optional<int> degree_cap, arity_cap, truncation_order;
    app.add_option("--model", model_path, "request file (JSON, schema koszul-verify/1)")->required();
    app.add_option("--suite", suites, "suite to run; repeatable, overrides the request's list")
        ->take_all()
        ->check(CLI::IsMember(known_suites()));
    app.add_option("--degree-cap", degree_cap, "polynomial degree / letter window");
    app.add_option("--arity-cap", arity_cap, "largest word length for coderivation checks");
    app.add_option("--truncation-order", truncation_order, "Maurer-Cartan lifting order");
    app.add_option("--format", format_name, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "write the certificate here instead of stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    const auto start = std::chrono::steady_clock::now();
    Report report;
    try {
        std::ifstream in(model_path, std::ios::binary);
        if (!in) return fail(kInvalidInput, "cannot read " + model_path);
        std::stringstream buf;
        buf << in.rdbuf();
        CheckRequest req = parse_request(buf.str());
        if (!suites.empty()) req.suites = suites;
        if (degree_cap) req.caps.degree_cap = *degree_cap;
        if (arity_cap) req.caps.arity_cap = *arity_cap;
        if (truncation_order) req.caps.truncation_order = *truncation_order;
        report = run_verify(req);
    } catch (const InputError& e) {
        return fail(kInvalidInput, model_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kInvalidInput, model_path + ": " + e.what());
    } catch (const std::domain_error& e) {
        return fail(kInvalidInput, model_path + ": " + e.what());
    } catch (const std::exception& e) {
        return fail(kInternalError, e.what());
    }
    report.meta.wall_clock_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    report.meta.toolchain = std::string("g++ ") + __VERSION__ + ", C++" + std::to_string(__cplusplus / 100 % 100);

    const std::string doc = emit_report(report, parse_format(format_name));
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!(out << doc)) return fail(kInvalidInput, "cannot write " + out_path);
    }
    return exit_code(report);
}
