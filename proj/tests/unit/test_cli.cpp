#include <doctest.h>

#include "koszul/cli/grammar.hpp"
#include "koszul/cli/run.hpp"
#include "koszul/formality/poisson_forms.hpp"

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace koszul;
using namespace koszul::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string corpus(const std::string& name) { return std::string(KOSZUL_CORPUS_DIR) + "/" + name + ".json"; }

struct Run {
    int code = -1;
    std::string out, err;
};

Run run_binary(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / ("koszul-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(KOSZUL_VERIFY_BIN) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

nlohmann::json without_meta(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    j.erase("meta");
    return j;
}

CheckRequest request(const std::string& text) { return parse_request(text); }

const Check& check_named(const Certificate& c, const std::string& name) {
    const Check* ch = c.find(name);
    REQUIRE_MESSAGE(ch != nullptr, name);
    return *ch;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("grammar parses and round-trips") {
    auto m = DeRham::make(3);
    const auto& f = m->forms();
    CHECK(parse_element(f, "dx2 /\\ dx1") == Scalar(-1) * (m->dx(1) * m->dx(2)));
    CHECK(parse_element(f, "-3/4 * x1^2 * dx2 /\\ dx3 + 2") ==
          Scalar(-3, 4) * (m->x(1) * m->x(1) * m->dx(2) * m->dx(3)) + Element::constant(f, Scalar(2)));
    CHECK(parse_element(f, "(-1/2) * x3 - x3") == Scalar(-3, 2) * m->x(3));
    CHECK(parse_element(f, "0").is_zero());
    CHECK(parse_element(m->vectors(), "x1 * d/dx2 /\\ d/dx3") == m->vx(1) * m->partial(2) * m->partial(3));

    std::mt19937 rng(11);
    auto window = m->form_window(2, 3);
    for (int trial = 0; trial < 50; ++trial) {
        Element e(f, {});
        for (int t = 0; t < 4; ++t)
            e += Scalar(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1) * window[rng() % window.size()];
        CHECK(parse_element(f, e.to_string()) == e);
    }
    auto pv = m->polyvector_window(1, 3);
    for (const auto& v : pv) CHECK(parse_element(m->vectors(), v.to_string()) == v);

    auto fails_at = [&](const std::string& text, std::size_t col) {
        try {
            parse_element(f, text);
            return false;
        } catch (const ParseError& e) {
            INFO(e.what());
            return e.column == col;
        }
    };
    CHECK(fails_at("x1 + x9", 6));
    CHECK(fails_at("x1 * ", 6));
    CHECK(fails_at("x1 x2", 4));
    CHECK(fails_at("1/0 * x1", 4));
    CHECK(fails_at("", 1));
    CHECK(fails_at("x1 ^ 2", 4));
}

TEST_CASE("request validation names the field") {
    auto fails_with = [](const std::string& text, const std::string& where) {
        try {
            request(text);
            return false;
        } catch (const InputError& e) {
            INFO(e.what());
            return std::string(e.what()).find(where) != std::string::npos;
        }
    };
    CHECK(fails_with(R"({"schema": "koszul-verify/1"})", "field /model"));
    CHECK(fails_with(R"({"schema": "koszul-verify/2", "model": {"kind": "de_rham", "n": 2}})", "field /schema"));
    CHECK(fails_with(R"({"schema": "koszul-verify/1", "model": {"kind": "de_rham", "n": 0}})", "field /model/n"));
    CHECK(fails_with(R"({"schema": "koszul-verify/1", "model": {"kind": "torus", "n": 2}})", "field /model/kind"));
    CHECK(fails_with(R"({"schema": "koszul-verify/1", "model": {"kind": "de_rham", "n": 2}, "colour": 1})",
                     "field /colour"));
    CHECK(fails_with(R"({"schema": "koszul-verify/1", "model": {"kind": "de_rham", "n": 2}, "suites": ["magic"]})",
                     "field /suites/0"));
    CHECK(fails_with(R"({"schema": "koszul-verify/1", "model": {"kind": "de_rham", "n": 2}, "caps": {"arity_cap": -1}})",
                     "field /caps/arity_cap"));
    CHECK(fails_with("{\n  \"schema\": \"koszul-verify/1\",\n  \"model\": {\"kind\": \"de_rham\" \"n\": 2}\n}",
                     "line 3"));

    // Payload and cap problems surface from run_verify, also as InputError.
    auto run_fails = [](const std::string& text, const std::string& where) {
        try {
            run_verify(request(text));
            return false;
        } catch (const InputError& e) {
            INFO(e.what());
            return std::string(e.what()).find(where) != std::string::npos;
        }
    };
    const std::string head = R"({"schema": "koszul-verify/1", "model": {"kind": "de_rham", "n": 3}, )";
    CHECK(run_fails(head + R"("bivector": "d/dx1 /\\ d/dx4", "suites": ["poisson"]})", "field /bivector: column 10"));
    CHECK(run_fails(head + R"("bivector": "d/dx1", "suites": ["poisson"]})", "field /bivector"));
    CHECK(run_fails(head + R"("suites": []})", "field /suites"));
    CHECK(run_fails(head + R"("suites": ["poisson"]})", "needs a bivector"));
    CHECK(run_fails(head + R"("bivector": "d/dx1 /\\ d/dx2", "suites": ["formality"], "caps": {"arity_cap": 2}})",
                    "incompatible caps"));
    CHECK(run_fails(head + R"("bivector": "x1 * d/dx2 /\\ d/dx3", "suites": ["mc"], "caps": {"degree_cap": 2}})",
                    "incompatible caps"));
    CHECK(run_fails(head + R"("operator": [{"coefficient": "1", "derivatives": ["dx1", "dx1"]}], "suites": ["quasi-bv"]})",
                    "field /operator/0/derivatives/1"));
    CHECK(run_fails(R"({"schema": "koszul-verify/1", "model": {"kind": "dgla", "basis": [{"name": "e", "degree": 1},
                     {"name": "f", "degree": 1}], "bracket": [{"left": "e", "right": "e", "value": "f"}]}, "suites": ["mc"]})",
                    "field /model"));
    CHECK(run_fails(R"({"schema": "koszul-verify/1", "model": {"kind": "dgla", "basis": [{"name": "e", "degree": 1}]},
                     "suites": ["cartan"]})",
                    "needs a de_rham model"));
}

TEST_CASE("suites dispatch and report") {
    Report so3 = run_verify(request(slurp(corpus("so3"))));
    CHECK(exit_code(so3) == kPass);
    const Certificate* formality = nullptr;
    for (const auto& c : so3.certificates)
        if (c.suite == "formality") formality = &c;
    REQUIRE(formality != nullptr);
    CHECK(check_named(*formality, "[Q,R] = 0").passed);
    CHECK(check_named(*formality, "e^R d e^-R = d + Q").passed);

    const std::string text = emit_report(so3, Format::Text);
    for (const char* name : {"[l_eta,d] = 0", "[i_eta,i_mu] = 0", "[l_eta,i_mu] = i_[eta,mu]", "[l_eta,l_mu] = l_[eta,mu]"})
        CHECK(text.find(name) != std::string::npos);

    Report bad = run_verify(request(slurp(corpus("nonpoisson"))));
    CHECK(exit_code(bad) == kIdentityFailure);
    const Check& sq = check_named(bad.certificates.at(0), "[pi,pi] = 0");
    REQUIRE_FALSE(sq.passed);
    // Replay the witness through the library.
    auto m = DeRham::make(3);
    Polyvector pi(*m, parse_element(m->vectors(), sq.witness.at(0).value));
    Polyvector sq_pi(*m, parse_element(m->vectors(), sq.witness.at(1).value));
    CHECK(sq.witness.at(1).label == "[pi,pi]");
    CHECK(schouten(*m, pi, pi) == sq_pi);
    CHECK_FALSE(sq_pi.is_zero());
    CHECK(sq_pi.arity() == 3);

    // The failing Jacobi check carries its triple verbatim in the JSON.
    const Check& jac = check_named(bad.certificates.at(1), "Jacobi");
    REQUIRE_FALSE(jac.passed);
    const std::string js = emit_report(bad, Format::Json);
    for (const auto& w : jac.witness) CHECK(js.find(nlohmann::json(w.value).dump()) != std::string::npos);
    std::vector<Element> abc;
    for (int i = 0; i < 3; ++i) abc.push_back(parse_element(m->forms(), jac.witness.at(static_cast<std::size_t>(i)).value));
    auto br = [&](const Element& a, const Element& b) { return koszul_bracket(*m, pi, a, b); };
    auto shifted = [&](const Element& a) { return *a.degree() - 1; };
    const Element jacobiator = br(abc[0], br(abc[1], abc[2])) - br(br(abc[0], abc[1]), abc[2]) -
                               sign_power(static_cast<long>(shifted(abc[0])) * shifted(abc[1])) * br(abc[1], br(abc[0], abc[2]));
    CHECK_FALSE(jacobiator.is_zero());
    CHECK(jacobiator == parse_element(m->forms(), jac.witness.at(3).value));

    Report obs = run_verify(request(slurp(corpus("obstructed"))));
    CHECK(exit_code(obs) == kIdentityFailure);
    CHECK(check_named(obs.certificates.at(0), "first-order data lift to order 4").witness.at(1).value == "2");
    CHECK(exit_code(run_verify(request(slurp(corpus("cone"))))) == kPass);
    CHECK(exit_code(run_verify(request(slurp(corpus("lagrangian"))))) == kPass);
}

TEST_CASE("structured reports round-trip") {
    Report r = run_verify(request(slurp(corpus("nonpoisson"))));
    r.meta = {42, "test"};
    CHECK(parse_report(emit_report(r, Format::Json)) == r);
    CHECK(report_from_json(report_to_json(r)) == r);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
    auto doc = report_to_json(r);
    doc["verdict"] = "pass";
    CHECK_THROWS_AS(report_from_json(doc), std::invalid_argument);
    CHECK_THROWS_AS(parse_report("{"), std::invalid_argument);
}

TEST_CASE("binary: exit codes") {
    CHECK(run_binary("--model " + corpus("lagrangian")).code == 0);
    Run bad = run_binary("--model " + corpus("nonpoisson"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("verdict: FAIL") != std::string::npos);
    CHECK(run_binary("--model " + corpus("lagrangian") + " --suite poisson --suite koszul --degree-cap 1").code == 0);
    CHECK(run_binary("--model " + corpus("lagrangian") + " --suite nonsense").code == 2);
    CHECK(run_binary("--model " + corpus("lagrangian") + " --format yaml").code == 2);
    CHECK(run_binary("--model /nonexistent/request.json").code == 2);
    CHECK(run_binary("").code == 2);

    const fs::path dir = fs::temp_directory_path() / ("koszul-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path empty = dir / "empty.json";
    std::ofstream(empty) << R"({"schema": "koszul-verify/1", "model": {"kind": "de_rham", "n": 2}, "bivector": "d/dx1 /\\ d/dx2"})";
    Run e = run_binary("--model " + empty.string());
    CHECK(e.code == 2);
    CHECK(e.err.find("no suite selected") != std::string::npos);
    const fs::path broken = dir / "broken.json";
    std::ofstream(broken) << "{\n  \"schema\": \"koszul-verify/1\",\n  \"model\": {\"kind\": \"de_rham\", \"n\": }\n}\n";
    Run b = run_binary("--model " + broken.string());
    CHECK(b.code == 2);
    CHECK(b.err.find("line 3") != std::string::npos);

    const fs::path out = dir / "cert.json";
    CHECK(run_binary("--model " + corpus("cone") + " --format json --out " + out.string()).code == 0);
    CHECK(parse_report(slurp(out)).passed());
}

TEST_CASE("binary: golden certificates are byte-stable") {
    for (const std::string name : {"so3", "nonpoisson", "lagrangian", "symplectic", "obstructed", "cone"}) {
        INFO(name);
        const std::string golden_dir = KOSZUL_GOLDEN_DIR;
        Run t1 = run_binary("--model " + corpus(name));
        Run t2 = run_binary("--model " + corpus(name));
        CHECK(t1.out == t2.out);
        CHECK(t1.out == slurp(golden_dir + "/" + name + ".txt"));
        Run j1 = run_binary("--model " + corpus(name) + " --format json");
        Run j2 = run_binary("--model " + corpus(name) + " --format json");
        CHECK(without_meta(j1.out).dump() == without_meta(j2.out).dump());
        CHECK(without_meta(j1.out) == nlohmann::json::parse(slurp(golden_dir + "/" + name + ".json")));
        CHECK(t1.code == j1.code);
    }
}

}
