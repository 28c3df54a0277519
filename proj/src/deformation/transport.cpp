#include "koszul/deformation/transport.hpp"

#include "koszul/coder/sign_policy.hpp"
#include "koszul/diffops/order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace koszul {

Vec KoszulSlice::to_vec(const Element& e) const {
    Vec v(basis.size());
    for (const auto& [m, c] : e.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || *it != m)
            throw std::invalid_argument("slice: element leaves the slice: " + e.to_string());
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

Element KoszulSlice::to_element(const Vec& v) const {
    Terms t;
    for (std::size_t i = 0; i < v.size(); ++i) add_term(t, basis[i], v[i]);
    return Element(model, std::move(t));
}

KoszulSlice koszul_slice(const KoszulStructure& s, int max_count) {
    KoszulSlice out;
    out.model = s.model();
    for (const auto& e : monomial_window(s.model(), max_count)) out.basis.push_back(e.terms().begin()->first);
    std::sort(out.basis.begin(), out.basis.end());

    FiniteDGLA::Spec spec;
    const std::size_t n = out.basis.size();
    std::vector<Element> elems;
    for (const auto& m : out.basis) {
        Element e = Element::basis(s.model(), m);
        spec.basis.push_back({s.model()->format(m), dgla_degree(s, e)});
        elems.push_back(std::move(e));
    }
    auto sparse = [&](const Element& e, const std::string& what) {
        FiniteDGLA::Sparse v;
        Vec c;
        try {
            c = out.to_vec(e);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("koszul_slice: span is not stable under " + what + " (" + e.to_string() + ")");
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) v[i] = c[i];
        return v;
    };
    for (std::size_t j = 0; j < n; ++j) spec.differential.push_back(sparse(apply_differential(elems[j]), "d"));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            spec.bracket[{i, j}] = sparse(decalage_bracket(s, elems[i], elems[j]), "the bracket");
    out.dgla = FiniteDGLA::make(std::move(spec));
    return out;
}

ElementSeries q_mc_residual(const KoszulStructure& s, const ElementSeries& x) {
    const std::size_t m = x.size();
    ElementSeries out(m, Element(s.model(), {}));
    for (std::size_t n = 0; n < m; ++n) {
        out[n] += apply_differential(x[n]);
        for (std::size_t i = 0; i <= n; ++i) out[n] += Scalar(1, 2) * decalage_bracket(s, x[i], x[n - i]);
    }
    return out;
}

ElementSeries transport_mc(const KoszulStructure& s, const Certificate& witness, const ElementSeries& x, bool inverse) {
    if (witness.suite != "formality" || !witness.passed())
        throw std::invalid_argument("transport_mc: needs a passing formality witness");
    const std::size_t m = x.size();
    if (m < 2) throw std::invalid_argument("transport_mc: truncation order must be at least 2");
    if (!x[0].is_zero()) throw std::invalid_argument("transport_mc: x must lie in the maximal ideal");
    for (const auto& xi : x)
        if (!xi.is_zero() && xi.degree() != 2 * s.k())
            throw std::invalid_argument("transport_mc: coefficients must have degree 2k = " + std::to_string(2 * s.k()));
    if (!inverse) {
        for (const auto& xi : x)
            if (!apply_differential(xi).is_zero())
                throw std::invalid_argument("transport_mc: x is not an abelian MC element (dx != 0)");
    } else {
        for (const auto& r : q_mc_residual(s, x))
            if (!r.is_zero()) throw std::invalid_argument("transport_mc: x is not MC for [,]_Q");
    }

    OpSeries R{{1, inverse ? -s.R() : s.R()}};
    ElementSeries y(m, Element(s.model(), {}));
    // y = sum_n 1/n! pi e^R(x^n), expanded over ordered tuples of t-powers.
    std::vector<std::size_t> powers;
    std::function<void(std::size_t)> rec = [&](std::size_t total) {
        if (!powers.empty()) {
            std::vector<Element> letters;
            for (auto p : powers) letters.push_back(x[p]);
            SymTensor w = SymTensor::word(s.model(), letters);
            if (!w.is_zero())
                y[total] += (Scalar(1) / factorial(static_cast<int>(powers.size()))) * exp_apply(R, w).project();
        }
        for (std::size_t p = 1; total + p < m; ++p) {
            if (x[p].is_zero()) continue;
            powers.push_back(p);
            rec(total + p);
            powers.pop_back();
        }
    };
    rec(0);
    return y;
}

}  // namespace koszul
