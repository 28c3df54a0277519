#include "koszul/formality/koszul_structure.hpp"

#include "koszul/coder/sign_policy.hpp"
#include "koszul/diffops/order.hpp"

#include <stdexcept>

namespace koszul {

namespace {

int parity_of(const Element& a, const char* what) {
    if (a.is_zero()) return 0;
    auto p = a.degree();
    if (!p) throw std::invalid_argument(std::string(what) + ": inhomogeneous argument " + a.to_string());
    return sign_policy::parity(*p);
}

Scalar sgn(long e) { return Scalar(sign_policy::sign(e)); }

std::string str(const Element& e) { return e.to_string(); }

void merge(Check& into, const Check& from) {
    into.cases += from.cases;
    if (!from.passed) into.fail(from.witness, from.detail);
}

}  // namespace

Element KoszulStructure::r_formula(const Element& a, const Element& b) const {
    return i_(a * b) - i_(a) * b - a * i_(b);
}

Element KoszulStructure::q_formula(const Element& a, const Element& b) const {
    const int p = parity_of(a, "q_formula");
    return l_(a * b) - l_(a) * b - sgn(p) * (a * l_(b));
}

std::vector<Element> KoszulStructure::letters(int max_count) const { return monomial_window(model_, max_count); }

KoszulStructure build_RQ(const LinearOperator& i, int window) {
    if (sign_policy::parity(i.degree()) != 0)
        throw std::invalid_argument("build_RQ: the operator must have even degree -2k, got " + std::to_string(i.degree()));
    KoszulStructure s;
    s.model_ = i.model();
    s.k_ = -i.degree() / 2;
    s.space_ = ShiftedSpace{s.model_, s.k_};
    s.i_ = i;
    s.d_ = differential_operator(s.model_);
    s.l_ = commutator(i, s.d_);

    auto report = quasi_bv_report(i);
    if (!report.quasi_bv()) {
        std::string failing;
        for (const auto& c : report.certificate.checks)
            if (!c.passed) failing += (failing.empty() ? "" : "; ") + c.name;
        throw std::invalid_argument("build_RQ: operator is not quasi-BV (" + failing + ")");
    }
    s.construction_.suite = "koszul-structure";
    s.construction_.window["pair_letters"] = std::to_string(window);
    Check& qb = s.construction_.add("i is quasi-BV");
    qb.cases = 1;

    s.mu1_ = make_mu(1, s.space_);
    MultiOp i_op = as_multiop(i, s.space_);
    s.d_op_ = as_multiop(s.d_, s.space_);
    s.R_ = nr_bracket(i_op, *s.mu1_);
    s.Q_ = nr_bracket(as_multiop(s.l_, s.space_), *s.mu1_);

    auto letters = s.letters(window);
    Check& rf = s.construction_.add("R(a,b) = i(ab) - i(a)b - a i(b)");
    Check& qf = s.construction_.add("Q(a,b) = l(ab) - l(a)b - (-1)^a a l(b)");
    for (const auto& a : letters)
        for (const auto& b : letters) {
            ++rf.cases;
            ++qf.cases;
            if (!((*s.R_)({a, b}) == s.r_formula(a, b))) rf.fail({{"a", str(a)}, {"b", str(b)}});
            if (!((*s.Q_)({a, b}) == s.q_formula(a, b))) qf.fail({{"a", str(a)}, {"b", str(b)}});
        }
    s.construction_.checks.push_back(compare_on_letters("Q = [R,d]", *s.Q_, nr_bracket(*s.R_, *s.d_op_), letters));
    for (const auto& c : s.construction_.checks)
        if (!c.passed) throw std::logic_error("build_RQ: structure identity failed: " + c.name);
    return s;
}

Element decalage_bracket(const KoszulStructure& s, const Element& a, const Element& b) {
    const int p = parity_of(a, "decalage_bracket");
    return Scalar(sign_policy::decalage_sign(p)) * s.Q()({a, b});
}

Element theorem_bracket(const KoszulStructure& s, const Element& a, const Element& b) {
    const int p = parity_of(a, "theorem_bracket");
    return sgn(p) * (s.l()(a * b) - s.l()(a) * b) - a * s.l()(b);
}

int dgla_degree(const KoszulStructure& s, const Element& a) {
    auto p = a.degree();
    if (!p) throw std::invalid_argument("dgla_degree: expected a nonzero homogeneous element");
    return sign_policy::dgla_degree(*p, s.k());
}

Certificate jacobi_antisym_suite(const KoszulStructure& s, const std::vector<Element>& letters) {
    Certificate cert;
    cert.suite = "gerstenhaber";
    cert.window["letters"] = std::to_string(letters.size());
    auto br = [&](const Element& a, const Element& b) { return decalage_bracket(s, a, b); };
    // Parities in A[2k-1] are those of A shifted by one.
    auto sp = [&](const Element& a) { return parity_of(a, "jacobi_antisym_suite") + 1; };
    auto ap = [&](const Element& a) { return parity_of(a, "jacobi_antisym_suite"); };

    Check& anti = cert.add("antisymmetry");
    Check& jac = cert.add("Jacobi");
    Check& leib = cert.add("Leibniz rule");
    Check& der = cert.add("d is a derivation");
    const std::size_t n = letters.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Element &a = letters[x], &b = letters[y];
            ++anti.cases;
            if (!(br(a, b) + sgn(sp(a) * sp(b)) * br(b, a)).is_zero()) anti.fail({{"a", str(a)}, {"b", str(b)}});
            ++der.cases;
            Element lhs = apply_differential(br(a, b));
            Element rhs = br(apply_differential(a), b) + sgn(sp(a)) * br(a, apply_differential(b));
            if (!(lhs == rhs)) der.fail({{"a", str(a)}, {"b", str(b)}, {"residual", str(lhs - rhs)}});
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y)
            for (std::size_t z = y; z < n; ++z) {
                const Element &a = letters[x], &b = letters[y], &c = letters[z];
                ++jac.cases;
                Element j = br(a, br(b, c)) - br(br(a, b), c) - sgn(sp(a) * sp(b)) * br(b, br(a, c));
                if (!j.is_zero()) jac.fail({{"a", str(a)}, {"b", str(b)}, {"c", str(c)}, {"jacobiator", str(j)}});
            }
    for (const auto& a : letters)
        for (const auto& b : letters)
            for (const auto& c : letters) {
                ++leib.cases;
                Element lhs = br(a, b * c);
                Element rhs = br(a, b) * c + sgn(sp(a) * ap(b)) * (b * br(a, c));
                if (!(lhs == rhs)) leib.fail({{"a", str(a)}, {"b", str(b)}, {"c", str(c)}});
            }
    return cert;
}

Certificate formality_witness(const KoszulStructure& s, int cap, const std::vector<Element>& letters) {
    if (cap < 3) throw std::invalid_argument("formality_witness: cap must be at least 3");
    Certificate cert;
    cert.suite = "formality";
    cert.window["word_length"] = std::to_string(cap);
    cert.window["letters"] = std::to_string(letters.size());
    cert.absorb(s.construction());

    cert.checks.push_back(vanishes_on_letters("[Q,R] = 0", nr_bracket(s.Q(), s.R()), letters));

    OpSeries R{{1, s.R()}}, d{{0, s.d_op()}}, dQ{{0, s.d_op()}, {1, s.Q()}};
    Check& conj = cert.add("e^R d e^-R = d + Q");
    for (const auto& w : words_up_to(s.model(), letters, static_cast<std::size_t>(cap))) {
        ++conj.cases;
        SymTensor lhs = conjugate(R, d, w), rhs = extend_coderivation(dQ, w);
        if (!(lhs == rhs)) conj.fail({{"word", w.to_string()}, {"residual", (lhs - rhs).to_string()}});
    }

    OpSeries g = gauge(R, {}, s.d_op(), cap);
    Check& first = cert.add("gauge transform: D_1 component = Q");
    Check& higher = cert.add("gauge transform: D_n components vanish for n >= 2");
    auto it = g.find(1);
    if (it == g.end())
        merge(first, vanishes_on_letters("", s.Q(), letters));
    else
        merge(first, compare_on_letters("", it->second, s.Q(), letters));
    if (g.count(0)) merge(first, vanishes_on_letters("", g.at(0), letters));
    for (const auto& [n, op] : g)
        if (n >= 2) merge(higher, vanishes_on_letters("", op, letters));

    cert.absorb(jacobi_antisym_suite(s, letters));
    return cert;
}

Certificate bv_check(const KoszulStructure& s, const std::vector<Element>& letters) {
    Certificate cert;
    cert.suite = "bv";
    cert.window["letters"] = std::to_string(letters.size());
    LinearOperator l2 = compose(s.l(), s.l());
    Check& c = cert.add("l^2 = 0");
    for (const auto& a : letters) {
        ++c.cases;
        Element v = l2(a);
        if (!v.is_zero()) c.fail({{"a", str(a)}, {"l^2(a)", str(v)}});
    }
    if (const NormalForm* nf = l2.normal_form(); nf && !nf->is_zero())
        c.fail({{"l^2", nf->to_string()}}, "nonzero normal form outside the window");
    return cert;
}

Subspace Subspace::monomials(std::string description, std::function<bool(const Monomial&)> accept) {
    Subspace s;
    s.description_ = std::move(description);
    s.accept_ = std::move(accept);
    return s;
}

Subspace Subspace::degree_at_least(const ModelPtr& model, int p0) {
    return monomials("degree >= " + std::to_string(p0), [model, p0](const Monomial& m) { return model->degree(m) >= p0; });
}

Subspace Subspace::monomial_ideal(const ModelPtr& model, const std::vector<std::string>& generators) {
    auto free = std::dynamic_pointer_cast<const FreeModel>(model);
    if (!free) throw std::invalid_argument("monomial_ideal: needs a free model");
    std::vector<std::size_t> idx;
    std::string desc = "ideal(";
    for (const auto& g : generators) {
        auto i = free->find(g);
        if (!i) throw std::invalid_argument("monomial_ideal: unknown generator " + g);
        idx.push_back(*i);
        desc += (idx.size() > 1 ? ", " : "") + g;
    }
    return monomials(desc + ")", [idx](const Monomial& m) {
        for (auto i : idx)
            if (m.exps[i] > 0) return true;
        return false;
    });
}

Subspace Subspace::span(std::string description, std::vector<Element> spanning) {
    Subspace s;
    s.description_ = std::move(description);
    s.span_.emplace(spanning);
    s.spanning_ = std::move(spanning);
    return s;
}

bool Subspace::contains(const Element& e) const {
    if (span_) return span_->contains(e);
    for (const auto& [m, c] : e.terms())
        if (!accept_(m)) return false;
    return true;
}

std::vector<Element> Subspace::test_elements(const std::vector<Element>& letters) const {
    if (span_) return spanning_;
    std::vector<Element> out;
    for (const auto& a : letters)
        if (!a.is_zero() && contains(a)) out.push_back(a);
    return out;
}

Certificate subcomplex_witness(const KoszulStructure& s, const Subspace& b, const std::vector<Element>& letters,
                               int cap) {
    Certificate cert;
    cert.suite = "subcomplex";
    cert.window["subspace"] = b.description();
    auto elems = b.test_elements(letters);
    cert.window["test_elements"] = std::to_string(elems.size());

    Check& dc = cert.add("d(B) in B");
    for (const auto& a : elems) {
        ++dc.cases;
        Element da = apply_differential(a);
        if (!b.contains(da)) dc.fail({{"a", str(a)}, {"d(a)", str(da)}});
    }
    Check& rc = cert.add("R(B,B) in B");
    for (std::size_t x = 0; x < elems.size(); ++x)
        for (std::size_t y = x; y < elems.size(); ++y) {
            ++rc.cases;
            Element r = s.R()({elems[x], elems[y]});
            if (!b.contains(r)) rc.fail({{"a", str(elems[x])}, {"b", str(elems[y])}, {"R(a,b)", str(r)}});
        }
    if (!cert.passed()) return cert;

    if (b.is_monomial()) {
        Check& pres = cert.add("e^R preserves S(B)");
        OpSeries R{{1, s.R()}};
        for (const auto& w : words_up_to(s.model(), elems, static_cast<std::size_t>(cap))) {
            ++pres.cases;
            SymTensor e = exp_apply(R, w);
            for (const auto& [word, c] : e.words())
                for (const auto& letter : word)
                    if (!b.contains(Element::basis(s.model(), letter)))
                        pres.fail({{"word", w.to_string()}, {"image", e.to_string()}});
        }
    }
    cert.absorb(formality_witness(s, cap, elems), "restricted: ");
    return cert;
}

}  // namespace koszul
