#include "koszul/diffops/order.hpp"

#include "koszul/coder/coderivation.hpp"

#include <functional>
#include <stdexcept>

namespace koszul {

namespace {

std::shared_ptr<const FreeModel> as_free(const ModelPtr& m) { return std::dynamic_pointer_cast<const FreeModel>(m); }
std::shared_ptr<const FiniteModel> as_finite(const ModelPtr& m) {
    return std::dynamic_pointer_cast<const FiniteModel>(m);
}

int count_of(const ModelPtr& model, const Element& a) {
    if (!as_free(model)) return 0;
    int c = 0;
    for (const auto& [m, v] : a.terms()) c = std::max(c, FreeModel::count(m));
    return c;
}

Scalar sgn(long e) { return sign_power(e); }

int parity_of(const ModelPtr& model, const Element& a) {
    return model->odd(a.terms().begin()->first) ? 1 : 0;
}

std::vector<Element> generators_of(const ModelPtr& model, std::vector<std::string>& names) {
    std::vector<Element> out;
    if (auto free = as_free(model)) {
        for (std::size_t g = 0; g < free->size(); ++g) {
            out.push_back(Element::basis(model, free->generator_monomial(g)));
            names.push_back(free->generator(g).name);
        }
    } else if (auto fin = as_finite(model)) {
        for (std::size_t i = 0; i < fin->dimension(); ++i) {
            out.push_back(Element::basis(model, FiniteModel::key(i)));
            names.push_back(fin->basis()[i].name);
        }
    } else {
        throw std::invalid_argument("verify_order: unsupported model");
    }
    return out;
}

}  // namespace

std::string to_string(OrderMode mode) {
    switch (mode) {
        case OrderMode::Syntactic:
            return "syntactic";
        case OrderMode::GeneratorRecursion:
            return "generator-recursion";
        case OrderMode::Sampled:
            return "sampled";
    }
    return "?";
}

std::vector<Element> monomial_window(const ModelPtr& model, int max_count) {
    std::vector<Element> out;
    if (auto free = as_free(model)) {
        for (const auto& m : free->monomials_up_to(max_count)) out.push_back(Element::basis(model, m));
    } else if (auto fin = as_finite(model)) {
        for (std::size_t i = 0; i < fin->dimension(); ++i) out.push_back(Element::basis(model, FiniteModel::key(i)));
    } else {
        throw std::invalid_argument("monomial_window: unsupported model");
    }
    return out;
}

int syntactic_order(const LinearOperator& f) {
    if (!f.normal_form()) throw std::invalid_argument("syntactic_order: operator has no normal form");
    return f.normal_form()->order();
}

OrderCertificate verify_order(const LinearOperator& f, int k, std::optional<OrderMode> mode, int window) {
    if (k < -1) throw std::invalid_argument("verify_order: k must be at least -1");
    OrderCertificate cert;
    cert.claimed = k;
    if (!mode) {
        switch (f.kind()) {
            case LinearOperator::Kind::NormalForm:
                mode = OrderMode::Syntactic;
                break;
            case LinearOperator::Kind::Matrix:
                mode = OrderMode::GeneratorRecursion;
                break;
            case LinearOperator::Kind::Opaque:
                mode = OrderMode::Sampled;
                break;
        }
    }
    cert.mode = *mode;
    if (*mode == OrderMode::Syntactic) {
        const int order = syntactic_order(f);
        cert.passed = order <= k;
        if (!cert.passed) {
            for (const auto& [key, c] : f.normal_form()->terms())
                if (FreeModel::count(key) == order) {
                    cert.witness = {{"term", "(" + c.to_string() + ") * D[" + f.model()->format(key) + "]"},
                                    {"order", std::to_string(order)}};
                    break;
                }
        }
        return cert;
    }

    // [f, g_1], [[f, g_1], g_2], ..., down to Diff_{-1} = 0.
    const bool evaluated = f.kind() == LinearOperator::Kind::Opaque;
    if (evaluated) {
        cert.window = window;
        cert.conclusive = false;
    }
    const auto gens = generators_of(f.model(), cert.generators);
    const auto test = evaluated ? monomial_window(f.model(), window) : std::vector<Element>{};
    cert.recursion_depth = k + 1;
    std::vector<std::size_t> path;
    std::function<bool(const LinearOperator&, int)> rec = [&](const LinearOperator& op, int level) -> bool {
        if (level < 0) {
            if (op.normal_form()) {
                if (op.normal_form()->is_zero()) return true;
                cert.witness.push_back({"operator", op.normal_form()->to_string()});
                return false;
            }
            if (op.matrix()) {
                if (op.matrix()->is_zero()) return true;
                for (std::size_t j = 0; j < op.matrix()->cols(); ++j) {
                    Element a = Element::basis(op.model(), FiniteModel::key(j));
                    if (!op(a).is_zero()) {
                        cert.witness.push_back({"argument", a.to_string()});
                        cert.witness.push_back({"value", op(a).to_string()});
                        break;
                    }
                }
                return false;
            }
            for (const auto& a : test) {
                Element v = op(a);
                if (!v.is_zero()) {
                    cert.witness.push_back({"argument", a.to_string()});
                    cert.witness.push_back({"value", v.to_string()});
                    return false;
                }
            }
            return true;
        }
        for (std::size_t g = 0; g < gens.size(); ++g) {
            path.push_back(g);
            const bool ok = rec(commutator_with_mult(op, gens[g]), level - 1);
            path.pop_back();
            if (!ok) {
                cert.witness.insert(cert.witness.begin(), {"commutator " + std::to_string(path.size() + 1), gens[g].to_string()});
                return false;
            }
        }
        return true;
    };
    cert.passed = rec(f, k);
    return cert;
}

Certificate is_derivation(const LinearOperator& f, int cap, int window) {
    if (cap < 1) throw std::invalid_argument("is_derivation: cap must be at least 1");
    Certificate cert{"derivation"};
    ModelPtr model = f.model();
    if (f.normal_form()) window = std::max(window, f.normal_form()->order());
    const auto letters = monomial_window(model, window);
    const auto small = monomial_window(model, 1);
    cert.window["pair_window"] = std::to_string(window);
    cert.window["mu_cap"] = std::to_string(cap);
    ShiftedSpace space{model, 0};
    MultiOp F = as_multiop(f, space);

    cert.checks.push_back(vanishes_on_letters("[f,mu_1] = 0", nr_bracket(F, make_mu(1, space)), letters));
    Check all_mu{"[f,mu_n] = 0 for n <= cap"};
    for (int n = 1; n <= cap && all_mu.passed; ++n) {
        Check c = vanishes_on_letters("mu", nr_bracket(F, make_mu(n, space)), n == 1 ? letters : small);
        all_mu.cases += c.cases;
        if (!c.passed) {
            auto w = c.witness;
            w.insert(w.begin(), {"n", std::to_string(n)});
            all_mu.fail(w);
        }
    }
    cert.checks.push_back(all_mu);

    Check leibniz{"Leibniz rule"};
    const int fd = f.degree();
    for (const auto& a : letters)
        for (const auto& b : letters) {
            if (!leibniz.passed) break;
            ++leibniz.cases;
            const long pa = parity_of(model, a);
            Element r = f(a * b) - f(a) * b - sgn(pa * fd) * (a * f(b));
            if (!r.is_zero()) leibniz.fail({{"a", a.to_string()}, {"b", b.to_string()}, {"residual", r.to_string()}});
        }
    cert.checks.push_back(leibniz);

    Check agree{"criteria agree"};
    agree.cases = 1;
    const bool v0 = cert.checks[0].passed, v1 = cert.checks[1].passed, v2 = cert.checks[2].passed;
    if (!(v0 == v1 && v1 == v2))
        agree.fail({{"[f,mu_1]", v0 ? "pass" : "fail"}, {"[f,mu_n]", v1 ? "pass" : "fail"},
                    {"Leibniz", v2 ? "pass" : "fail"}});
    cert.checks.push_back(agree);
    return cert;
}

QuasiBVReport quasi_bv_report(const LinearOperator& f, int window) {
    QuasiBVReport report;
    Certificate& cert = report.certificate;
    cert.suite = "quasi-bv";
    ModelPtr model = f.model();
    const int fd = f.degree();

    int budget = window;
    std::string domain = "sampled";
    if (f.normal_form()) {
        budget = std::max(3, f.normal_form()->order());
        domain = "decisive";
    } else if (f.matrix()) {
        domain = "all basis triples";
    }
    const bool free = as_free(model) != nullptr;
    const auto letters = monomial_window(model, free ? budget : 0);
    cert.window["triple_factor_budget"] = free ? std::to_string(budget) : "finite";
    cert.window["triple_domain"] = domain;

    // (1)
    OrderCertificate oc = verify_order(f, 2, std::nullopt, budget);
    Element one = Element::constant(model, Scalar(1));
    Element f1 = f(one);
    report.order_two = oc.passed;
    report.unit_killed = f1.is_zero();
    Check c1{"(1) f in Diff_2 and f(1) = 0"};
    c1.cases = 1;
    c1.detail = "order check: " + to_string(oc.mode) + (oc.conclusive ? "" : " (non-conclusive)");
    if (!report.order_two) c1.fail(oc.witness, "order exceeds 2");
    else if (!report.unit_killed) c1.fail({{"f(1)", f1.to_string()}}, "f(1) != 0");

    ShiftedSpace space{model, 0};
    MultiOp F = as_multiop(f, space);
    MultiOp mu1 = make_mu(1, space), mu2 = make_mu(2, space);
    MultiOp lhs4 = nr_bracket(F, mu2);
    MultiOp rhs4 = nr_bracket(nr_bracket(F, mu1), mu1);

    Check c2{"(2) seven terms"}, c3{"(3) Poisson identity"}, c4{"(4) [f,mu_2] = [[f,mu_1],mu_1]"};
    auto Phi = [&](const Element& a, const Element& b) {
        const long pa = parity_of(model, a);
        return f(a * b) - f(a) * b - sgn(pa * fd) * (a * f(b));
    };
    for (std::size_t i = 0; i < letters.size(); ++i)
        for (std::size_t j = 0; j < letters.size(); ++j)
            for (std::size_t l = 0; l < letters.size(); ++l) {
                const Element &a = letters[i], &b = letters[j], &c = letters[l];
                if (free && count_of(model, a) + count_of(model, b) + count_of(model, c) > budget) continue;
                const long pa = parity_of(model, a), pb = parity_of(model, b), pc = parity_of(model, c);
                auto witness = [&](const Element& r) {
                    return std::vector<WitnessEntry>{
                        {"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}, {"residual", r.to_string()}};
                };
                if (c2.passed) {
                    ++c2.cases;
                    Element lhs = f(a * b * c) + f(a) * b * c + sgn(pa * pb) * (f(b) * a * c) +
                                  sgn(pc * (pa + pb)) * (f(c) * a * b);
                    Element rhs = f(a * b) * c + sgn(pa * (pb + pc)) * (f(b * c) * a) + sgn(pb * pc) * (f(a * c) * b);
                    Element r = lhs - rhs;
                    if (!r.is_zero()) c2.fail(witness(r));
                }
                if (c3.passed) {
                    ++c3.cases;
                    Element r = Phi(a, b * c) - Phi(a, b) * c - sgn((pa + fd) * pb) * (b * Phi(a, c));
                    if (!r.is_zero()) c3.fail(witness(r));
                }
                if (c4.passed) {
                    ++c4.cases;
                    std::vector<Monomial> keys;
                    for (const Element* e : {&a, &b, &c}) keys.push_back(e->terms().begin()->first);
                    Element r = lhs4.on_basis(keys) - rhs4.on_basis(keys);
                    if (!r.is_zero()) c4.fail(witness(r));
                }
            }
    report.seven_terms = c2.passed;
    report.poisson_identity = c3.passed;
    report.mu_identity = c4.passed;
    cert.checks = {c1, c2, c3, c4};
    Check agree{"conditions agree"};
    agree.cases = 1;
    if (!report.consistent())
        agree.fail({{"(1)", report.condition1() ? "pass" : "fail"}, {"(2)", c2.passed ? "pass" : "fail"},
                    {"(3)", c3.passed ? "pass" : "fail"}, {"(4)", c4.passed ? "pass" : "fail"}});
    cert.checks.push_back(agree);
    return report;
}

}  // namespace koszul
