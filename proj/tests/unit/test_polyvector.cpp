#include <doctest.h>

#include "koszul/diffops/order.hpp"
#include "koszul/polyvector/derham.hpp"

#include <map>
#include <random>

using namespace koszul;

namespace {

// Plain polynomial oracle: exponent vector -> coefficient, n coordinates.
using Poly = std::map<std::vector<int>, Scalar>;

void accumulate(Poly& p, const std::vector<int>& e, const Scalar& c) {
    auto& slot = p[e];
    slot += c;
    if (slot.is_zero()) p.erase(e);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            accumulate(out, e, ca * cb);
        }
    return out;
}

Poly poly_diff(const Poly& a, int i) {
    Poly out;
    for (const auto& [e, c] : a) {
        if (e[i] == 0) continue;
        auto f = e;
        --f[i];
        accumulate(out, f, c * Scalar(e[i]));
    }
    return out;
}

Poly poly_add(Poly a, const Poly& b, const Scalar& s = Scalar(1)) {
    for (const auto& [e, c] : b) accumulate(a, e, s * c);
    return a;
}

// Components of a polyvector of pure arity p, keyed by the sorted index set.
std::map<std::vector<int>, Poly> components(const DeRham& m, const Polyvector& v) {
    const int n = m.dimension();
    std::map<std::vector<int>, Poly> out;
    for (const auto& [k, c] : v.element().terms()) {
        std::vector<int> idx, e(k.exps.begin(), k.exps.begin() + n);
        for (int i = 0; i < n; ++i)
            if (k.exps[n + i]) idx.push_back(i);
        accumulate(out[idx], e, c);
    }
    return out;
}

Polyvector vector_field(const DeRham& m, const std::vector<Poly>& coeffs) {
    const int n = m.dimension();
    Element out(m.vectors(), {});
    for (int i = 0; i < n; ++i)
        for (const auto& [e, c] : coeffs[i]) {
            Monomial k{std::vector<int>(2 * n, 0)};
            for (int j = 0; j < n; ++j) k.exps[j] = e[j];
            k.exps[n + i] = 1;
            out += Element::basis(m.vectors(), k, c);
        }
    return Polyvector(m, out);
}

std::vector<Poly> field_coeffs(const DeRham& m, const Polyvector& v) {
    std::vector<Poly> out(m.dimension());
    for (const auto& [idx, p] : components(m, v)) out[idx.at(0)] = p;
    return out;
}

Poly random_poly(int n, std::mt19937& rng, int max_degree, int terms) {
    Poly p;
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(n, 0);
        int budget = static_cast<int>(rng() % (max_degree + 1));
        while (budget-- > 0) ++e[rng() % n];
        accumulate(p, e, Scalar(c(rng)));
    }
    return p;
}

Polyvector random_polyvector(const DeRham& m, std::mt19937& rng, int arity, int max_degree) {
    auto basis = m.polyvector_window(max_degree, arity);
    std::uniform_int_distribution<int> c(-3, 3);
    Element out(m.vectors(), {});
    for (int t = 0; t < 4; ++t) {
        const Element& b = basis[rng() % basis.size()];
        if (b.degree() != -arity) continue;
        out += Scalar(c(rng)) * b;
    }
    return Polyvector(m, out);
}

// {f,g} from the antisymmetric matrix pi^{ij}; the Jacobiator on the
// coordinates vanishes iff pi is Poisson.
bool jacobiator_vanishes(const DeRham& m, const Polyvector& pi) {
    const int n = m.dimension();
    std::vector<std::vector<Poly>> P(n, std::vector<Poly>(n));
    for (const auto& [idx, p] : components(m, pi)) {
        P[idx[0]][idx[1]] = p;
        P[idx[1]][idx[0]] = poly_add({}, p, Scalar(-1));
    }
    auto bracket = [&](const Poly& f, const Poly& g) {
        Poly out;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out = poly_add(out, poly_mul(P[i][j], poly_mul(poly_diff(f, i), poly_diff(g, j))));
        return out;
    };
    auto coord = [&](int i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        return Poly{{e, Scalar(1)}};
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                Poly j = bracket(bracket(coord(a), coord(b)), coord(c));
                j = poly_add(j, bracket(bracket(coord(b), coord(c)), coord(a)));
                j = poly_add(j, bracket(bracket(coord(c), coord(a)), coord(b)));
                if (!j.empty()) return false;
            }
    return true;
}

Polyvector so3(const DeRham& m) {
    return Polyvector(m, m.vx(1) * m.partial(2) * m.partial(3) + m.vx(2) * m.partial(3) * m.partial(1) +
                             m.vx(3) * m.partial(1) * m.partial(2));
}

Polyvector bad_pi(const DeRham& m) {
    return Polyvector(m, m.partial(1) * m.partial(2) + m.vx(1) * m.partial(1) * m.partial(3));
}

}  // namespace

TEST_SUITE("polyvector") {

TEST_CASE("interior products") {
    auto m = DeRham::make(2);
    Polyvector dx(*m, m->partial(1)), dxdy(*m, m->partial(1) * m->partial(2));
    Element one = Element::constant(m->forms(), Scalar(1));
    CHECK(interior_product(*m, dx, m->dx(1)) == one);
    CHECK(interior_product(*m, dx, m->dx(2)).is_zero());
    CHECK(interior_product(*m, dxdy, m->dx(1) * m->dx(2)) == Scalar(-1) * one);
    // i_{dx /\ dy} = i_dx o i_dy
    CHECK(interior_product(*m, dxdy, m->dx(1) * m->dx(2)) ==
          interior_product(*m, dx, interior_product(*m, Polyvector(*m, m->partial(2)), m->dx(1) * m->dx(2))));
    CHECK(interior_product(*m, dxdy, one).is_zero());
    CHECK(interior_operator(*m, dxdy).degree() == -2);

    // A vector field contracts as a derivation.
    Polyvector X(*m, m->vx(2) * m->partial(1) + m->vx(1) * m->vx(1) * m->partial(2));
    auto window = m->form_window(2, 2);
    for (const auto& a : window)
        for (const auto& b : window) {
            const int s = a.degree().value_or(0) % 2 ? -1 : 1;
            CHECK(interior_product(*m, X, a * b) ==
                  interior_product(*m, X, a) * b + Scalar(s) * (a * interior_product(*m, X, b)));
        }
    CHECK_THROWS_AS(interior_operator(*m, Polyvector(*m, m->partial(1) + m->partial(1) * m->partial(2))),
                    std::invalid_argument);
}

TEST_CASE("lie derivatives") {
    auto m = DeRham::make(2);
    Polyvector dx(*m, m->partial(1));
    Element f = m->x(1) * m->x(1) * m->x(2) + Scalar(3) * m->x(2);
    CHECK(lie_derivative(*m, dx, f) == Scalar(2) * (m->x(1) * m->x(2)));
    CHECK(lie_derivative(*m, dx, m->dx(1)).is_zero());
    CHECK(lie_operator(*m, Polyvector(*m, m->partial(1) * m->partial(2))).degree() == -1);
    for (const auto& a : m->form_window(3, 2))
        CHECK(lie_derivative(*m, dx, apply_differential(a)) == apply_differential(lie_derivative(*m, dx, a)));
}

TEST_CASE("schouten bracket examples") {
    auto m = DeRham::make(3);
    Polyvector dx(*m, m->partial(1)), dy(*m, m->partial(2));
    CHECK(schouten(*m, dx, dy).is_zero());
    Element f = m->vx(1) * m->vx(1) * m->vx(3) + m->vx(2);
    Polyvector fdy(*m, f * m->partial(2));
    CHECK(schouten(*m, dx, fdy) == Polyvector(*m, Scalar(2) * (m->vx(1) * m->vx(3)) * m->partial(2)));

    Polyvector tri = schouten(*m, bad_pi(*m), bad_pi(*m));
    Polyvector top(*m, m->partial(1) * m->partial(2) * m->partial(3));
    CHECK((tri == Scalar(2) * top || tri == Scalar(-2) * top));
    CHECK(schouten(*m, so3(*m), so3(*m)).is_zero());
}

TEST_CASE("schouten agrees with the vector-field lie bracket") {
    auto m = DeRham::make(3);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Poly> X(3), Y(3);
        for (int i = 0; i < 3; ++i) {
            X[i] = random_poly(3, rng, 2, 2);
            Y[i] = random_poly(3, rng, 2, 2);
        }
        std::vector<Poly> Z(3);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                Z[j] = poly_add(Z[j], poly_mul(X[i], poly_diff(Y[j], i)));
                Z[j] = poly_add(Z[j], poly_mul(Y[i], poly_diff(X[j], i)), Scalar(-1));
            }
        Polyvector got = schouten(*m, vector_field(*m, X), vector_field(*m, Y));
        CHECK(field_coeffs(*m, got) == Z);
    }
}

TEST_CASE("schouten: direct expansion equals the operator extraction") {
    auto m = DeRham::make(3);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4);
        Polyvector a = random_polyvector(*m, rng, p, 2), b = random_polyvector(*m, rng, q, 2);
        auto other = schouten_from_operators(*m, a, b);
        REQUIRE(other.has_value());
        CHECK(*other == schouten(*m, a, b));
        // [a,b] = -(-1)^{(p-1)(q-1)} [b,a]
        const Scalar s((p - 1) * (q - 1) % 2 != 0 ? 1 : -1);
        CHECK(schouten(*m, a, b) == s * schouten(*m, b, a));
        if (!a.is_zero() && !b.is_zero() && !schouten(*m, a, b).is_zero()) CHECK(schouten(*m, a, b).arity() == p + q - 1);
    }
}

TEST_CASE("cartan formulas") {
    auto m2 = DeRham::make(2);
    CHECK(cartan_suite(*m2, Polyvector(*m2, m2->partial(1)), Polyvector(*m2, m2->partial(2))).passed());
    Polyvector xdy(*m2, m2->vx(1) * m2->partial(2)), ydx(*m2, m2->vx(2) * m2->partial(1));
    auto cert = cartan_suite(*m2, xdy, ydx);
    CHECK(cert.passed());
    CHECK(cert.checks.size() == 4);
    CHECK(cert.find("[l_eta,i_mu] = i_[eta,mu]") != nullptr);
    CHECK(cert.window.at("poly_degree") == "4");

    auto m = DeRham::make(3);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        Polyvector a = random_polyvector(*m, rng, static_cast<int>(rng() % 3), 2);
        Polyvector b = random_polyvector(*m, rng, static_cast<int>(rng() % 3), 2);
        auto c = cartan_suite(*m, a, b, FormWindow{3, -1});
        INFO(a.to_string(), " , ", b.to_string());
        CHECK(c.passed());
    }
}

TEST_CASE("poisson verification") {
    auto m2 = DeRham::make(2);
    Polyvector any(*m2, (m2->vx(1) * m2->vx(2) + m2->vx(2) * m2->vx(2)) * m2->partial(1) * m2->partial(2));
    CHECK(is_poisson(*m2, any).passed());

    auto m = DeRham::make(3);
    CHECK(is_poisson(*m, so3(*m)).passed());
    auto bad = is_poisson(*m, bad_pi(*m));
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.checks.size() == 1);
    CHECK(bad.checks[0].witness.at(1).label == "[pi,pi]");
    CHECK_THROWS_AS(is_poisson(*m, Polyvector(*m, m->partial(1))), std::invalid_argument);

    std::mt19937 rng(31);
    int poisson = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Polyvector pi = random_polyvector(*m, rng, 2, 1);
        const bool expected = jacobiator_vanishes(*m, pi);
        poisson += expected;
        CHECK(is_poisson(*m, pi).passed() == expected);
    }
    CHECK(is_poisson(*m, so3(*m)).passed() == jacobiator_vanishes(*m, so3(*m)));
    CHECK(poisson < 30);
}

TEST_CASE("poisson iff [l_pi,i_pi] is quasi-BV") {
    auto m = DeRham::make(3);
    for (const auto& pi : {so3(*m), bad_pi(*m), Polyvector(*m, m->partial(1) * m->partial(2))}) {
        auto report = quasi_bv_report(commutator(lie_operator(*m, pi), interior_operator(*m, pi)));
        CHECK(report.consistent());
        CHECK(report.quasi_bv() == is_poisson(*m, pi).passed());
    }
}

TEST_CASE("l_pi squares to zero for poisson pi") {
    auto m = DeRham::make(3);
    auto window = m->form_window(3, 3);
    auto l = lie_operator(*m, so3(*m));
    auto l2 = compose(l, l);
    CHECK(l2.normal_form()->is_zero());
    for (const auto& a : window) CHECK(l2(a).is_zero());
    auto lb = lie_operator(*m, bad_pi(*m));
    CHECK_FALSE(compose(lb, lb).normal_form()->is_zero());
    // l_pi^2 = 1/2 l_[pi,pi]
    auto half = Scalar(1, 2) * lie_operator(*m, schouten(*m, bad_pi(*m), bad_pi(*m)));
    CHECK(agree_on(compose(lb, lb), half, window));
}

TEST_CASE("anchor map") {
    auto m2 = DeRham::make(2);
    Polyvector pxy(*m2, m2->partial(1) * m2->partial(2));
    Polyvector a = anchor_apply(*m2, pxy, m2->dx(1));
    CHECK((a == Polyvector(*m2, m2->partial(2)) || a == Polyvector(*m2, -m2->partial(2))));
    CHECK(anchor_apply(*m2, pxy, Element()).is_zero());
    CHECK_THROWS_AS(anchor_apply(*m2, pxy, m2->dx(1) * m2->dx(2)), std::invalid_argument);

    auto m = DeRham::make(3);
    Polyvector pi = so3(*m);
    Polyvector r = anchor_apply(*m, pi, m->dx(1));
    Polyvector expected(*m, m->vx(3) * m->partial(2) - m->vx(2) * m->partial(3));
    CHECK((r == expected || r == Scalar(-1) * expected));

    // Defining identity on basis 1-forms, for random polynomial alpha.
    std::mt19937 rng(41);
    auto ones = m->form_window(2, 1);
    for (int trial = 0; trial < 10; ++trial) {
        Element alpha(m->forms(), {});
        for (const auto& b : ones)
            if (b.degree() == 1 && rng() % 3 == 0) alpha += Scalar(static_cast<int>(rng() % 5) - 2) * b;
        Polyvector v = anchor_apply(*m, pi, alpha);
        CHECK((v.is_zero() || v.arity() == 1));
        for (int l = 1; l <= 3; ++l)
            CHECK(interior_product(*m, v, m->dx(l)) == interior_product(*m, pi, alpha * m->dx(l)));
        for (const auto& beta : ones)
            if (beta.degree() == 1) CHECK(interior_product(*m, v, beta) == interior_product(*m, pi, alpha * beta));
    }
}

}
