#include "koszul/polyvector/derham.hpp"

#include "koszul/diffops/order.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

namespace koszul {

namespace {

int theta_count(const DeRham& m, const Monomial& k) {
    int c = 0;
    for (int i = 0; i < m.dimension(); ++i) c += k.exps[m.dimension() + i];
    return c;
}

bool pure_function(const DeRham& m, const Monomial& k) { return theta_count(m, k) == 0; }

// m * (right derivative by theta_i): theta_i is moved to the right end.
Terms right_theta_derivative(const DeRham& m, int i, const Monomial& k) {
    const int n = m.dimension();
    Terms out;
    if (k.exps[n + i] == 0) return out;
    int after = 0;
    for (int j = i + 1; j < n; ++j) after += k.exps[n + j];
    Monomial r = k;
    r.exps[n + i] = 0;
    out.emplace(std::move(r), Scalar(after % 2 ? -1 : 1));
    return out;
}

Element x_derivative(const DeRham& m, int i, const Element& e) {
    Terms out;
    for (const auto& [k, c] : e.terms()) add_terms(out, left_derivative(*m.vectors(), static_cast<std::size_t>(i), k), c);
    return Element(m.vectors(), std::move(out));
}

Element right_theta(const DeRham& m, int i, const Element& e) {
    Terms out;
    for (const auto& [k, c] : e.terms()) add_terms(out, right_theta_derivative(m, i, k), c);
    return Element(m.vectors(), std::move(out));
}

// [P,Q] = sum_i (P <-d/dtheta_i)(d_i Q) - (-1)^{(p-1)(q-1)} (Q <-d/dtheta_i)(d_i P)
Element schouten_homogeneous(const DeRham& m, const Element& P, int p, const Element& Q, int q) {
    Element out(m.vectors(), {});
    const Scalar swap = Scalar(((p - 1) * (q - 1)) % 2 != 0 ? 1 : -1);
    for (int i = 0; i < m.dimension(); ++i) {
        out += right_theta(m, i, P) * x_derivative(m, i, Q);
        out += swap * (right_theta(m, i, Q) * x_derivative(m, i, P));
    }
    return out;
}

std::map<int, Element> by_arity(const DeRham& m, const Polyvector& v) {
    std::map<int, Element> out;
    for (const auto& [k, c] : v.element().terms()) out[theta_count(m, k)] += Element::basis(m.vectors(), k, c);
    return out;
}

Polyvector schouten_direct(const DeRham& m, const Polyvector& eta, const Polyvector& mu) {
    Element out(m.vectors(), {});
    for (const auto& [p, P] : by_arity(m, eta))
        for (const auto& [q, Q] : by_arity(m, mu)) out += schouten_homogeneous(m, P, p, Q, q);
    return Polyvector(m, out);
}


void schouten_self_test() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        auto m = DeRham::make(3);
        // One probe per arity pair, with coefficients that exercise every
        // term of the expansion.
        std::vector<Polyvector> probes = {
            Polyvector(*m, m->vx(1) * m->vx(2)),
            Polyvector(*m, m->vx(2) * m->partial(1) + m->vx(1) * m->vx(3) * m->partial(3)),
            Polyvector(*m, m->vx(3) * m->partial(1) * m->partial(2) + m->vx(1) * m->vx(1) * m->partial(2) * m->partial(3) +
                               m->vx(2) * m->partial(1) * m->partial(3)),
            Polyvector(*m, m->partial(1) * m->partial(2) + m->vx(1) * m->partial(1) * m->partial(3)),
            Polyvector(*m, m->vx(2) * m->partial(1) * m->partial(2) * m->partial(3)),
        };
        for (const auto& a : probes)
            for (const auto& b : probes) {
                auto other = schouten_from_operators(*m, a, b);
                if (!other || !(*other == schouten_direct(*m, a, b)))
                    throw std::logic_error("schouten: Leibniz expansion disagrees with [l_eta, i_mu]");
            }
    });
}

}  // namespace

std::shared_ptr<const DeRham> DeRham::make(int n) {
    if (n < 1) throw std::invalid_argument("DeRham: need at least one coordinate");
    auto out = std::shared_ptr<DeRham>(new DeRham());
    out->n_ = n;
    std::vector<Generator> fg, vg;
    for (int i = 1; i <= n; ++i) fg.push_back({"x" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) fg.push_back({"dx" + std::to_string(i), 1});
    for (int i = 1; i <= n; ++i) vg.push_back({"x" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) vg.push_back({"d/dx" + std::to_string(i), -1});
    std::vector<Terms> d(2 * n);
    for (int i = 0; i < n; ++i) {
        Monomial k{std::vector<int>(2 * n, 0)};
        k.exps[n + i] = 1;
        d[i][k] = Scalar(1);
    }
    out->forms_ = FreeModel::make(fg, d);
    out->vectors_ = FreeModel::make(vg);
    return out;
}

Element DeRham::x(int i) const { return Element::basis(forms_, forms_->generator_monomial(i - 1)); }
Element DeRham::dx(int i) const { return Element::basis(forms_, forms_->generator_monomial(n_ + i - 1)); }
Element DeRham::vx(int i) const { return Element::basis(vectors_, vectors_->generator_monomial(i - 1)); }
Element DeRham::partial(int i) const { return Element::basis(vectors_, vectors_->generator_monomial(n_ + i - 1)); }

Element DeRham::function_to_forms(const Element& f) const {
    if (f.model() && f.model() != vectors_) throw std::invalid_argument("DeRham: not a polyvector-side function");
    for (const auto& [k, c] : f.terms())
        if (!pure_function(*this, k)) throw std::invalid_argument("DeRham: expected a function, got " + f.to_string());
    return Element(forms_, f.terms());
}

Element DeRham::function_to_vectors(const Element& f) const {
    if (f.model() && f.model() != forms_) throw std::invalid_argument("DeRham: not a form-side function");
    for (const auto& [k, c] : f.terms())
        for (int i = 0; i < n_; ++i)
            if (k.exps[n_ + i]) throw std::invalid_argument("DeRham: expected a function, got " + f.to_string());
    return Element(vectors_, f.terms());
}

namespace {

std::vector<Element> window_of(const std::shared_ptr<const FreeModel>& model, int n, int poly_degree, int odd_max) {
    std::vector<Element> out;
    Monomial cur{std::vector<int>(2 * n, 0)};
    std::function<void(int, int, int)> rec = [&](int i, int poly_left, int odd_left) {
        if (i == 2 * n) {
            out.push_back(Element::basis(model, cur));
            return;
        }
        const int cap = i < n ? poly_left : std::min(1, odd_left);
        for (int e = 0; e <= cap; ++e) {
            cur.exps[i] = e;
            rec(i + 1, i < n ? poly_left - e : poly_left, i < n ? odd_left : odd_left - e);
        }
        cur.exps[i] = 0;
    };
    rec(0, poly_degree, odd_max);
    return out;
}

}  // namespace

std::vector<Element> DeRham::form_window(int poly_degree, int form_degree) const {
    return window_of(forms_, n_, poly_degree, form_degree < 0 ? n_ : form_degree);
}

std::vector<Element> DeRham::polyvector_window(int poly_degree, int max_arity) const {
    return window_of(vectors_, n_, poly_degree, max_arity);
}

Polyvector::Polyvector(const DeRham& model, Element v) : value_(std::move(v)) {
    if (value_.model() && value_.model() != model.vectors())
        throw std::invalid_argument("Polyvector: element is not in the polyvector algebra");
    if (!value_.model()) value_ = Element(model.vectors(), {});
}

std::optional<int> Polyvector::arity() const {
    auto d = value_.degree();
    if (!d) return std::nullopt;
    return -*d;
}

LinearOperator interior_operator(const DeRham& m, const Polyvector& eta) {
    const int n = m.dimension();
    NormalForm nf(m.forms());
    for (const auto& [k, c] : eta.element().terms()) {
        Monomial coeff{std::vector<int>(2 * n, 0)}, key{std::vector<int>(2 * n, 0)};
        for (int i = 0; i < n; ++i) {
            coeff.exps[i] = k.exps[i];
            key.exps[n + i] = k.exps[n + i];
        }
        nf.add(Element::basis(m.forms(), coeff, c), key);
    }
    auto arity = eta.arity();
    if (!eta.is_zero() && !arity) throw std::invalid_argument("interior_operator: polyvector of mixed arity");
    return LinearOperator::from_normal_form(std::move(nf), arity ? -*arity : 0);
}

Element interior_product(const DeRham& m, const Polyvector& eta, const Element& alpha) {
    return interior_operator(m, eta)(alpha);
}

LinearOperator lie_operator(const DeRham& m, const Polyvector& eta) {
    return commutator(interior_operator(m, eta), differential_operator(m.forms()));
}

Element lie_derivative(const DeRham& m, const Polyvector& eta, const Element& alpha) {
    return lie_operator(m, eta)(alpha);
}

std::optional<Polyvector> extract_contraction(const DeRham& m, const LinearOperator& op) {
    const NormalForm* nf = op.normal_form();
    if (!nf || op.model() != m.forms()) return std::nullopt;
    const int n = m.dimension();
    Element out(m.vectors(), {});
    for (const auto& [key, c] : nf->terms()) {
        for (int i = 0; i < n; ++i)
            if (key.exps[i]) return std::nullopt;
        for (const auto& [cm, v] : c.terms()) {
            Monomial k{std::vector<int>(2 * n, 0)};
            for (int i = 0; i < n; ++i) {
                if (cm.exps[n + i]) return std::nullopt;
                k.exps[i] = cm.exps[i];
                k.exps[n + i] = key.exps[n + i];
            }
            out += Element::basis(m.vectors(), k, v);
        }
    }
    return Polyvector(m, out);
}

std::optional<Polyvector> schouten_from_operators(const DeRham& m, const Polyvector& eta, const Polyvector& mu) {
    Polyvector out(m, Element(m.vectors(), {}));
    for (const auto& [p, P] : by_arity(m, eta))
        for (const auto& [q, Q] : by_arity(m, mu)) {
            LinearOperator c = commutator(lie_operator(m, Polyvector(m, P)), interior_operator(m, Polyvector(m, Q)));
            auto part = extract_contraction(m, c);
            if (!part) return std::nullopt;
            out = out + *part;
        }
    return out;
}

Polyvector schouten(const DeRham& m, const Polyvector& eta, const Polyvector& mu) {
    schouten_self_test();
    return schouten_direct(m, eta, mu);
}

namespace {

// Exact comparison of two normal-form operators, backed by evaluation on the window.
void compare_operators(Check& check, const LinearOperator& lhs, const LinearOperator& rhs,
                       const std::vector<Element>& window) {
    for (const auto& a : window) {
        ++check.cases;
        Element l = lhs(a), r = rhs(a);
        if (!(l == r)) {
            check.fail({{"alpha", a.to_string()}, {"lhs", l.to_string()}, {"rhs", r.to_string()}});
            return;
        }
    }
    const NormalForm* a = lhs.normal_form();
    const NormalForm* b = rhs.normal_form();
    if (a && b && !(*a == *b))
        check.fail({{"difference", (*a - *b).to_string()}}, "normal forms differ outside the window");
}

LinearOperator zero_operator(const DeRham& m, int degree) {
    return LinearOperator::from_normal_form(NormalForm(m.forms()), degree);
}

}  // namespace

Certificate cartan_suite(const DeRham& m, const Polyvector& eta, const Polyvector& mu, FormWindow window) {
    Certificate cert;
    cert.suite = "cartan";
    const int form_degree = window.form_degree < 0 ? m.dimension() : window.form_degree;
    cert.window["poly_degree"] = std::to_string(window.poly_degree);
    cert.window["form_degree"] = std::to_string(form_degree);
    const auto forms = m.form_window(window.poly_degree, form_degree);

    LinearOperator d = differential_operator(m.forms());
    LinearOperator i_eta = interior_operator(m, eta), i_mu = interior_operator(m, mu);
    LinearOperator l_eta = lie_operator(m, eta), l_mu = lie_operator(m, mu);
    Polyvector bracket = schouten(m, eta, mu);
    LinearOperator i_bracket = interior_operator(m, bracket);
    LinearOperator l_bracket = lie_operator(m, bracket);

    LinearOperator c1 = commutator(l_eta, d);
    compare_operators(cert.add("[l_eta,d] = 0"), c1, zero_operator(m, c1.degree()), forms);
    LinearOperator c2 = commutator(i_eta, i_mu);
    compare_operators(cert.add("[i_eta,i_mu] = 0"), c2, zero_operator(m, c2.degree()), forms);
    compare_operators(cert.add("[l_eta,i_mu] = i_[eta,mu]"), commutator(l_eta, i_mu), i_bracket, forms);
    compare_operators(cert.add("[l_eta,l_mu] = l_[eta,mu]"), commutator(l_eta, l_mu), l_bracket, forms);
    return cert;
}

Certificate is_poisson(const DeRham& m, const Polyvector& pi) {
    if (!pi.is_zero() && pi.arity() != 2) throw std::invalid_argument("is_poisson: expected a bivector, got " + pi.to_string());
    Certificate cert;
    cert.suite = "poisson";
    cert.window["mode"] = "exact";
    Polyvector tri = schouten(m, pi, pi);
    Check& c = cert.add("[pi,pi] = 0");
    c.cases = 1;
    if (!tri.is_zero()) c.fail({{"pi", pi.to_string()}, {"[pi,pi]", tri.to_string()}});
    return cert;
}

Polyvector anchor_apply(const DeRham& m, const Polyvector& pi, const Element& alpha) {
    if (!alpha.is_zero() && (alpha.model() != m.forms() || alpha.degree() != 1))
        throw std::invalid_argument("anchor_apply: expected a 1-form, got " + alpha.to_string());
    Element out(m.vectors(), {});
    if (alpha.is_zero()) return Polyvector(m, out);
    for (int l = 1; l <= m.dimension(); ++l) {
        Element f = interior_product(m, pi, alpha * m.dx(l));
        if (f.is_zero()) continue;
        out += m.function_to_vectors(f) * m.partial(l);
    }
    return Polyvector(m, out);
}

}  // namespace koszul
