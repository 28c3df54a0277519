#include "koszul/formality/poisson_forms.hpp"

#include "koszul/coder/sign_policy.hpp"

namespace koszul {

namespace {

int form_parity(const Element& a, const char* what) {
    if (a.is_zero()) return 0;
    auto p = a.degree();
    if (!p) throw std::invalid_argument(std::string(what) + ": inhomogeneous form " + a.to_string());
    return sign_policy::parity(*p);
}

Scalar sgn(int e) { return Scalar(sign_policy::sign(e)); }

std::string str(const Element& e) { return e.to_string(); }

}  // namespace

Element koszul_bracket(const DeRham& m, const Polyvector& pi, const Element& alpha, const Element& beta) {
    const int p = form_parity(alpha, "koszul_bracket");
    LinearOperator l = lie_operator(m, pi);
    return sgn(p) * (l(alpha * beta) - l(alpha) * beta) - alpha * l(beta);
}

KoszulStructure poisson_structure(const DeRham& m, const Polyvector& pi, int window) {
    if (!pi.is_zero() && pi.arity() != 2)
        throw std::invalid_argument("poisson_structure: expected a bivector, got " + pi.to_string());
    LinearOperator i = pi.is_zero() ? LinearOperator::from_normal_form(NormalForm(m.forms()), -2) : interior_operator(m, pi);
    return build_RQ(i, window);
}

Element closed_forms_primitive(const KoszulStructure& s, const Element& alpha, const Element& beta) {
    const int p = form_parity(alpha, "closed_forms_primitive");
    if (Element r = apply_differential(alpha); !r.is_zero())
        throw NotClosedError("closed_forms_primitive: first argument is not closed, d = " + r.to_string(), r);
    if (Element r = apply_differential(beta); !r.is_zero())
        throw NotClosedError("closed_forms_primitive: second argument is not closed, d = " + r.to_string(), r);
    Element gamma = sgn(p + 1) * s.r_formula(alpha, beta);
    if (!(apply_differential(gamma) == decalage_bracket(s, alpha, beta)))
        throw std::logic_error("closed_forms_primitive: d(gamma) differs from the bracket");
    return gamma;
}

std::vector<Element> one_form_window(const DeRham& m, int poly_degree) {
    std::vector<Element> out;
    for (auto& e : m.form_window(poly_degree, 1))
        if (e.degree() == 1) out.push_back(std::move(e));
    return out;
}

Certificate magri_anchor_suite(const DeRham& m, const Polyvector& pi, const std::vector<Element>& one_forms) {
    Certificate cert;
    cert.suite = "magri";
    cert.window["one_forms"] = std::to_string(one_forms.size());
    const bool poisson = is_poisson(m, pi).passed();
    cert.window["lie_morphism"] = poisson ? "checked" : "skipped (pi is not Poisson)";
    LinearOperator i_pi = interior_operator(m, pi);
    Check& a1 = cert.add("[a,b] = l_{pi#a} b - l_{pi#b} a - d i_pi(a b)");
    Check& a2 = cert.add("[a,b] = i_{pi#a} db - i_{pi#b} da + d i_pi(a b)");
    Check& b = cert.add("i_{pi#a}(db) = i_pi(a db) - a i_pi(db)");
    Check* c = poisson ? &cert.add("pi#[a,b] = [pi#a, pi#b]") : nullptr;
    for (const auto& x : one_forms) {
        for (const auto& y : one_forms) {
            if (x.degree() != 1 || y.degree() != 1) throw std::invalid_argument("magri_anchor_suite: expected 1-forms");
            Polyvector ax = anchor_apply(m, pi, x), ay = anchor_apply(m, pi, y);
            Element br = koszul_bracket(m, pi, x, y);
            Element dx = apply_differential(x), dy = apply_differential(y);
            Element dixy = apply_differential(i_pi(x * y));
            std::vector<WitnessEntry> w{{"a", str(x)}, {"b", str(y)}};

            ++a1.cases;
            if (!(br == lie_derivative(m, ax, y) - lie_derivative(m, ay, x) - dixy)) a1.fail(w);
            ++a2.cases;
            if (!(br == interior_product(m, ax, dy) - interior_product(m, ay, dx) + dixy)) a2.fail(w);
            ++b.cases;
            if (!(interior_product(m, ax, dy) == i_pi(x * dy) - x * i_pi(dy))) b.fail(w);
            if (c) {
                ++c->cases;
                if (!(anchor_apply(m, pi, br) == schouten(m, ax, ay))) c->fail(w);
            }
        }
    }
    return cert;
}

Certificate poisson_bv_check(const DeRham& m, const Polyvector& pi, const std::vector<Element>& letters) {
    KoszulStructure s = poisson_structure(m, pi);
    Certificate cert = bv_check(s, letters);
    LinearOperator l = lie_operator(m, pi);
    LinearOperator half = Scalar(1, 2) * lie_operator(m, schouten(m, pi, pi));
    Check& id = cert.add("l_pi^2 = 1/2 l_[pi,pi]");
    for (const auto& a : letters) {
        ++id.cases;
        if (!(l(l(a)) == half(a))) id.fail({{"a", str(a)}});
    }
    Check& agree = cert.add("agrees with is_poisson");
    agree.cases = 1;
    const bool bv = cert.find("l^2 = 0")->passed;
    if (bv != is_poisson(m, pi).passed()) agree.fail({{"pi", pi.to_string()}});
    return cert;
}

Certificate koszul_suite(const DeRham& m, const Polyvector& pi, const KoszulStructure& s,
                         const std::vector<Element>& letters) {
    Certificate cert;
    cert.suite = "koszul";
    cert.window["letters"] = std::to_string(letters.size());
    Check& dq = cert.add("definition = decalage of Q");
    Check& dl = cert.add("definition = [,]_l formula");
    LinearOperator l = lie_operator(m, pi);
    std::vector<Element> one_forms;
    for (const auto& a : letters) {
        if (a.degree() == 1) one_forms.push_back(a);
        const int p = form_parity(a, "koszul_suite");
        const Element la = l(a);
        for (const auto& b : letters) {
            const Element def = sgn(p) * (l(a * b) - la * b) - a * l(b);
            const Element q = decalage_bracket(s, a, b), t = theorem_bracket(s, a, b);
            ++dq.cases;
            ++dl.cases;
            if (!(def == q)) dq.fail({{"a", str(a)}, {"b", str(b)}, {"definition", str(def)}, {"decalage", str(q)}});
            if (!(def == t)) dl.fail({{"a", str(a)}, {"b", str(b)}, {"definition", str(def)}, {"[,]_l", str(t)}});
        }
    }
    cert.absorb(jacobi_antisym_suite(s, letters));
    cert.absorb(magri_anchor_suite(m, pi, one_forms), "magri: ");
    return cert;
}

}  // namespace koszul
