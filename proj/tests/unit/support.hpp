#pragma once

#include "koszul/core/element.hpp"
#include "koszul/diffops/normal_form.hpp"

#include <random>
#include <string>
#include <vector>

namespace koszul::testing {

// x_i in degree 0, dx_i in degree 1, d(x_i) = dx_i.
inline std::shared_ptr<const FreeModel> flat_forms(int n) {
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) gens.push_back({"dx" + std::to_string(i), 1});
    std::vector<Terms> d(2 * n);
    for (int i = 0; i < n; ++i) {
        Monomial m{std::vector<int>(2 * n, 0)};
        m.exps[n + i] = 1;
        d[i][m] = Scalar(1);
    }
    return FreeModel::make(gens, d);
}

inline Element gen(const std::shared_ptr<const FreeModel>& m, std::string_view name) {
    return Element::basis(m, m->generator_monomial(*m->find(name)));
}

inline std::vector<Element> letters(const std::shared_ptr<const FreeModel>& m, int max_count) {
    std::vector<Element> out;
    for (const auto& b : m->monomials_up_to(max_count)) out.push_back(Element::basis(m, b));
    return out;
}

// Homogeneous random operator of the given degree: sum of c * D^K with
// |K| <= order and coefficient monomials of at most coeff_count factors.
inline NormalForm random_normal_form(const std::shared_ptr<const FreeModel>& m, std::mt19937& rng, int order,
                                     int coeff_count, int degree, int terms = 4) {
    NormalForm nf(m);
    auto keys = m->monomials_up_to(order);
    auto coeffs = m->monomials_up_to(coeff_count);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < terms; ++t) {
        const auto& key = keys[rng() % keys.size()];
        const int need = degree + m->degree(key);
        std::vector<Monomial> fit;
        for (const auto& cm : coeffs)
            if (m->degree(cm) == need) fit.push_back(cm);
        if (fit.empty()) continue;
        nf.add(Element::basis(m, fit[rng() % fit.size()], Scalar(c(rng))), key);
    }
    return nf;
}

}  // namespace koszul::testing
