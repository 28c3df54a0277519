#include "koszul/coder/coderivation.hpp"

#include "koszul/core/permutations.hpp"

#include <stdexcept>
#include <string>

namespace koszul {

MultiOp make_mu(int n, const ShiftedSpace& space) {
    if (n < 0) throw std::invalid_argument("make_mu: n must be non-negative");
    ModelPtr model = space.model;
    return MultiOp(
        space, n + 1, 2 * space.k * n,
        [model](std::span<const Monomial> keys) {
            Element r = Element::basis(model, keys[0]);
            for (std::size_t i = 1; i < keys.size() && !r.is_zero(); ++i) r = r * Element::basis(model, keys[i]);
            return r;
        },
        0);
}

MultiOp pre_lie(const MultiOp& f, const MultiOp& g) {
    if (!(f.space() == g.space())) throw std::invalid_argument("pre_lie: operands live on different spaces");
    const int arity = f.arity() + g.arity() - 1;
    const int degree = f.degree() + g.degree();
    if (f.known_zero() || g.known_zero()) return MultiOp::zero(f.space(), arity, degree);
    const auto perms = unshuffles(g.arity(), arity - g.arity());
    ModelPtr model = f.space().model;
    std::optional<int> bound;
    if (f.order_bound() && g.order_bound()) bound = *f.order_bound() + *g.order_bound();
    return MultiOp(
        f.space(), arity, degree,
        [f, g, perms, model](std::span<const Monomial> keys) {
            const std::size_t ga = static_cast<std::size_t>(g.arity());
            std::vector<int> parities(keys.size());
            for (std::size_t i = 0; i < keys.size(); ++i) parities[i] = model->odd(keys[i]) ? 1 : 0;
            Element result(model, {});
            std::vector<Monomial> inner(ga);
            std::vector<Element> outer(static_cast<std::size_t>(f.arity()));
            for (const auto& perm : perms) {
                for (std::size_t i = 0; i < ga; ++i) inner[i] = keys[perm[i]];
                Element gv = g.on_basis(inner);
                if (gv.is_zero()) continue;
                outer[0] = std::move(gv);
                for (std::size_t i = ga; i < perm.size(); ++i) outer[i - ga + 1] = Element::basis(model, keys[perm[i]]);
                Element fv = f(outer);
                if (fv.is_zero()) continue;
                if (koszul_sign_unchecked(perm, parities) > 0)
                    result += fv;
                else
                    result -= fv;
            }
            return result;
        },
        bound);
}

MultiOp nr_bracket(const MultiOp& f, const MultiOp& g) {
    const long fg = static_cast<long>(f.degree()) * g.degree();
    MultiOp a = pre_lie(f, g);
    MultiOp b = pre_lie(g, f);
    return fg % 2 == 0 ? a - b : a + b;
}

OpSeries nr_bracket(const OpSeries& a, const OpSeries& b, int arity_cap) {
    OpSeries r;
    for (const auto& [i, f] : a)
        for (const auto& [j, g] : b)
            if (i + j + 1 <= arity_cap) add_component(r, nr_bracket(f, g));
    return r;
}

SymTensor extend_coderivation(const MultiOp& g, const SymTensor& t) {
    ModelPtr model = t.model() ? t.model() : g.space().model;
    SymTensor out(model);
    if (g.known_zero() || t.is_zero()) return out;
    if (model != g.space().model) throw std::invalid_argument("extend_coderivation: mismatched models");
    const std::size_t ga = static_cast<std::size_t>(g.arity());
    std::map<std::size_t, std::vector<std::vector<int>>> perm_cache;
    std::vector<Monomial> inner(ga);
    for (const auto& [w, c] : t.words()) {
        if (w.size() < ga) continue;
        auto& perms = perm_cache[w.size()];
        if (perms.empty()) perms = unshuffles(static_cast<int>(ga), static_cast<int>(w.size() - ga));
        std::vector<int> parities(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) parities[i] = model->odd(w[i]) ? 1 : 0;
        for (const auto& perm : perms) {
            for (std::size_t i = 0; i < ga; ++i) inner[i] = w[perm[i]];
            Element gv = g.on_basis(inner);
            if (gv.is_zero()) continue;
            const Scalar coeff = koszul_sign_unchecked(perm, parities) > 0 ? c : -c;
            for (const auto& [m, v] : gv.terms()) {
                SymTensor::Word nw;
                nw.reserve(w.size() - ga + 1);
                nw.push_back(m);
                for (std::size_t i = ga; i < perm.size(); ++i) nw.push_back(w[perm[i]]);
                out.add_word(std::move(nw), coeff * v);
            }
        }
    }
    return out;
}

SymTensor extend_coderivation(const OpSeries& g, const SymTensor& t) {
    SymTensor out(t.model());
    for (const auto& [n, op] : g) out += extend_coderivation(op, t);
    return out;
}

SymTensor exp_apply(const OpSeries& R, const SymTensor& t) {
    for (const auto& [n, op] : R) {
        if (n < 1) throw std::invalid_argument("exp_apply: R must lie in D_{>0}");
        if (op.degree() != 0) throw std::invalid_argument("exp_apply: R must have degree 0");
    }
    SymTensor result = t;
    SymTensor term = t;
    for (int k = 1; !term.is_zero(); ++k) {
        term = extend_coderivation(R, term);
        term *= Scalar(1, k);
        result += term;
    }
    return result;
}

SymTensor exp_apply(const MultiOp& R, const SymTensor& t) {
    OpSeries s;
    s.emplace(R.index(), R);
    return exp_apply(s, t);
}

SymTensor conjugate(const OpSeries& R, const OpSeries& X, const SymTensor& t) {
    return exp_apply(R, extend_coderivation(X, exp_apply(Scalar(-1) * R, t)));
}

OpSeries gauge(const OpSeries& R, const OpSeries& xi, const MultiOp& d, int arity_cap) {
    if (arity_cap < 2) throw std::invalid_argument("gauge: arity cap must be at least 2");
    for (const auto& [n, op] : R)
        if (n < 1 || op.degree() != 0) throw std::invalid_argument("gauge: R must be a degree-0 element of D_{>0}");
    OpSeries d_series;
    d_series.emplace(0, d);
    OpSeries term = nr_bracket(R, xi, arity_cap) + nr_bracket(R, d_series, arity_cap);
    OpSeries result = xi;
    for (int n = 0; !term.empty(); ++n) {
        result = result + (Scalar(1) / factorial(n + 1)) * term;
        term = nr_bracket(R, term, arity_cap);
    }
    return result;
}

std::vector<SymTensor> words_up_to(ModelPtr model, const std::vector<Element>& letters, std::size_t max_length) {
    std::vector<SymTensor> out;
    for (std::size_t len = 1; len <= max_length; ++len)
        for_each_multiset(letters.size(), len, [&](std::span<const std::size_t> idx) {
            std::vector<Element> w;
            for (auto i : idx) w.push_back(letters[i]);
            SymTensor t = SymTensor::word(model, w);
            if (!t.is_zero()) out.push_back(std::move(t));
        });
    return out;
}

namespace {

std::vector<WitnessEntry> tuple_witness(const std::vector<Element>& args, const Element& residual) {
    std::vector<WitnessEntry> w;
    for (std::size_t i = 0; i < args.size(); ++i) w.push_back({"a" + std::to_string(i), args[i].to_string()});
    w.push_back({"residual", residual.to_string()});
    return w;
}

}  // namespace

Check verify_gauge_conjugation(const OpSeries& R, const OpSeries& xi, const MultiOp& d, int arity_cap,
                               const std::vector<Element>& letters) {
    Check check{"gauge conjugation"};
    ModelPtr model = d.space().model;
    OpSeries dx = xi;
    add_component(dx, d);
    OpSeries rhs = gauge(R, xi, d, arity_cap);
    add_component(rhs, d);
    for (const auto& w : words_up_to(model, letters, static_cast<std::size_t>(arity_cap))) {
        ++check.cases;
        SymTensor diff = conjugate(R, dx, w) - extend_coderivation(rhs, w);
        if (!diff.is_zero()) {
            check.fail({{"word", w.to_string()}, {"residual", diff.to_string()}});
            break;
        }
    }
    return check;
}

Check compare_on_letters(const std::string& name, const MultiOp& lhs, const MultiOp& rhs,
                         const std::vector<Element>& letters) {
    Check check{name};
    if (lhs.arity() != rhs.arity()) throw std::invalid_argument("compare_on_letters: arity mismatch");
    for_each_multiset(letters.size(), static_cast<std::size_t>(lhs.arity()), [&](std::span<const std::size_t> idx) {
        if (!check.passed) return;
        std::vector<Element> args;
        for (auto i : idx) args.push_back(letters[i]);
        ++check.cases;
        Element diff = lhs(args) - rhs(args);
        if (!diff.is_zero()) check.fail(tuple_witness(args, diff));
    });
    return check;
}

Check vanishes_on_letters(const std::string& name, const MultiOp& op, const std::vector<Element>& letters) {
    return compare_on_letters(name, op, MultiOp::zero(op.space(), op.arity(), op.degree()), letters);
}

Certificate check_linfty(const OpSeries& xi, const MultiOp& d, int cap, const std::vector<Element>& letters) {
    if (cap < 1) throw std::invalid_argument("check_linfty: cap must be at least 1");
    Certificate cert{"linfty"};
    cert.window["arity_cap"] = std::to_string(cap);
    cert.window["letters"] = std::to_string(letters.size());
    OpSeries D = xi;
    add_component(D, d);
    for (int n = 0; n < cap; ++n) {
        MultiOp comp = MultiOp::zero(d.space(), n + 1, 2 * d.degree());
        for (const auto& [i, f] : D)
            for (const auto& [j, g] : D) {
                if (i + j != n) continue;
                if (f.degree() != d.degree() || g.degree() != d.degree())
                    throw std::invalid_argument("check_linfty: components must share the degree of d");
                comp = comp + nr_bracket(f, g);
            }
        Check c = vanishes_on_letters("[D,D] in D_" + std::to_string(n), comp, letters);
        cert.checks.push_back(std::move(c));
    }
    return cert;
}

}  // namespace koszul
