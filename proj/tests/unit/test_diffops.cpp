#include <doctest.h>

#include "support.hpp"

#include "koszul/diffops/order.hpp"

#include <random>

using namespace koszul;
using namespace koszul::testing;

namespace {

std::size_t index_of(const std::shared_ptr<const FreeModel>& m, std::string_view name) { return *m->find(name); }

// i_{d_i ^ d_j} = iota_i o iota_j with iota_i = d/d(dx_i).
NormalForm contraction(const std::shared_ptr<const FreeModel>& m, const Element& coeff, int i, int j) {
    NormalForm a = NormalForm::partial(m, index_of(m, "dx" + std::to_string(i)));
    NormalForm b = NormalForm::partial(m, index_of(m, "dx" + std::to_string(j)));
    return NormalForm::multiplication(m, coeff).compose(a.compose(b));
}

// Non-Poisson bivector d1^d2 + x1 d1^d3 on three variables.
LinearOperator bad_pi(const std::shared_ptr<const FreeModel>& m) {
    Element one = Element::constant(m, Scalar(1));
    return LinearOperator::from_normal_form(contraction(m, one, 1, 2) + contraction(m, gen(m, "x1"), 1, 3));
}

LinearOperator so3_pi(const std::shared_ptr<const FreeModel>& m) {
    return LinearOperator::from_normal_form(contraction(m, gen(m, "x1"), 2, 3) + contraction(m, gen(m, "x2"), 3, 1) +
                                            contraction(m, gen(m, "x3"), 1, 2));
}

std::shared_ptr<const FreeModel> mixed_model() {
    return FreeModel::make({{"x", 0}, {"y", 0}, {"e", 1}});
}

}  // namespace

TEST_SUITE("diffops") {

TEST_CASE("left derivatives carry the Koszul sign") {
    auto m = flat_forms(2);
    Element x = gen(m, "x1"), dx = gen(m, "dx1"), dy = gen(m, "dx2");
    NormalForm ddy = NormalForm::partial(m, index_of(m, "dx2"));
    CHECK(ddy.apply(dx * dy) == -dx);
    CHECK(ddy.apply(x * dy) == x);
    NormalForm ddx1 = NormalForm::partial(m, index_of(m, "x1"));
    CHECK(ddx1.apply(x * x * dy) == Scalar(2) * (x * dy));
    // i_{dx ^ dy}(dx /\ dy) = -1
    CHECK(contraction(m, Element::constant(m, Scalar(1)), 1, 2).apply(dx * dy) == Element::constant(m, Scalar(-1)));
}

TEST_CASE("composition agrees with sequential evaluation") {
    auto m = flat_forms(2);
    std::mt19937 rng(17);
    auto window = letters(m, 3);
    for (int trial = 0; trial < 40; ++trial) {
        NormalForm f = random_normal_form(m, rng, 2, 2, trial % 3 - 1);
        NormalForm g = random_normal_form(m, rng, 2, 2, (trial / 3) % 3 - 1);
        NormalForm fg = f.compose(g);
        for (const auto& a : window) CHECK(fg.apply(a) == f.apply(g.apply(a)));
    }
}

TEST_CASE("the differential as a normal form") {
    auto m = flat_forms(2);
    LinearOperator d = differential_operator(m);
    CHECK(d.degree() == 1);
    for (const auto& a : letters(m, 3)) CHECK(d(a) == apply_differential(a));
    CHECK(compose(d, d).normal_form()->is_zero());
}

TEST_CASE("commutators with multiplications") {
    auto m = flat_forms(2);
    Element x = gen(m, "x1"), y = gen(m, "x2"), dx = gen(m, "dx1");
    LinearOperator d = differential_operator(m);
    // A derivation: [d, a] is multiplication by d(a).
    for (const auto& a : {x * y, dx, x * dx}) {
        LinearOperator c = commutator_with_mult(d, a);
        CHECK(*c.normal_form() == NormalForm::multiplication(m, apply_differential(a)));
    }
    CHECK(commutator_with_mult(left_multiplication(m, x * dx), y).normal_form()->is_zero());
    // The commutator of i_pi with a function vanishes; with dx1 it has order 1.
    auto m3 = flat_forms(3);
    LinearOperator ipi = so3_pi(m3);
    CHECK(commutator_with_mult(ipi, gen(m3, "x1")).normal_form()->is_zero());
    LinearOperator c = commutator_with_mult(ipi, gen(m3, "dx1"));
    CHECK(syntactic_order(c) == 1);
    CHECK(verify_order(c, 1).passed);
    CHECK_FALSE(verify_order(c, 0).passed);
}

TEST_CASE("order certificates") {
    auto m = flat_forms(2);
    Element x = gen(m, "x1"), dy = gen(m, "dx2");
    CHECK(verify_order(left_multiplication(m, x * dy), 0).passed);
    LinearOperator d = differential_operator(m);
    CHECK(verify_order(d, 1).passed);
    CHECK_FALSE(verify_order(d, 0).passed);
    LinearOperator ipi = LinearOperator::from_normal_form(contraction(m, Element::constant(m, Scalar(1)), 1, 2));
    auto two = verify_order(ipi, 2);
    CHECK(two.passed);
    CHECK(two.mode == OrderMode::Syntactic);
    auto one = verify_order(ipi, 1);
    CHECK_FALSE(one.passed);
    CHECK_FALSE(one.witness.empty());
    CHECK_THROWS_AS(verify_order(d, -2), std::invalid_argument);

    // Recursion mode on the same operators agrees.
    CHECK(verify_order(ipi, 2, OrderMode::GeneratorRecursion).passed);
    auto rec = verify_order(ipi, 1, OrderMode::GeneratorRecursion);
    CHECK_FALSE(rec.passed);
    CHECK(rec.recursion_depth == 2);

    // Opaque operators are sampled and flagged.
    LinearOperator opaque = LinearOperator::opaque(m, 1, [](const Element& a) { return apply_differential(a); });
    auto s = verify_order(opaque, 1, std::nullopt, 3);
    CHECK(s.passed);
    CHECK_FALSE(s.conclusive);
    CHECK(s.mode == OrderMode::Sampled);
    CHECK_FALSE(verify_order(opaque, 0, std::nullopt, 3).passed);
    CHECK_THROWS_AS(verify_order(opaque, 1, OrderMode::Syntactic), std::invalid_argument);
}

TEST_CASE("syntactic order agrees with the generator recursion") {
    auto m = mixed_model();
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        NormalForm nf = random_normal_form(m, rng, 3, 2, trial % 2);
        if (nf.is_zero()) continue;
        LinearOperator f = LinearOperator::from_normal_form(nf);
        const int ord = syntactic_order(f);
        CHECK(verify_order(f, ord, OrderMode::GeneratorRecursion).passed);
        if (ord >= 0) CHECK_FALSE(verify_order(f, ord - 1, OrderMode::GeneratorRecursion).passed);
    }
}

TEST_CASE("order filtration is multiplicative and the bracket lowers it") {
    auto m = mixed_model();
    std::mt19937 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        NormalForm a = random_normal_form(m, rng, 1 + trial % 3, 2, 0);
        NormalForm b = random_normal_form(m, rng, 1 + (trial / 3) % 3, 2, 1);
        if (a.is_zero() || b.is_zero()) continue;
        LinearOperator fa = LinearOperator::from_normal_form(a), fb = LinearOperator::from_normal_form(b);
        CHECK(syntactic_order(compose(fa, fb)) <= a.order() + b.order());
        CHECK(syntactic_order(commutator(fa, fb)) <= a.order() + b.order() - 1);
    }
}

TEST_CASE("derivation criterion") {
    auto m = flat_forms(2);
    CHECK(is_derivation(differential_operator(m)).passed());
    // i_xi for xi = x2 d1 - x1 d2 is a derivation.
    auto xi = NormalForm::multiplication(m, gen(m, "x2")).compose(NormalForm::partial(m, index_of(m, "dx1"))) +
              Scalar(-1) * NormalForm::multiplication(m, gen(m, "x1")).compose(NormalForm::partial(m, index_of(m, "dx2")));
    CHECK(is_derivation(LinearOperator::from_normal_form(xi)).passed());
    auto cert = is_derivation(LinearOperator::from_normal_form(contraction(m, Element::constant(m, Scalar(1)), 1, 2)));
    CHECK_FALSE(cert.passed());
    REQUIRE(cert.find("Leibniz rule") != nullptr);
    CHECK_FALSE(cert.find("Leibniz rule")->witness.empty());
    CHECK(cert.find("criteria agree")->passed);
}

TEST_CASE("quasi-BV report") {
    auto m = flat_forms(2);
    auto rd = quasi_bv_report(differential_operator(m));
    CHECK(rd.quasi_bv());
    CHECK(rd.consistent());
    auto m3 = flat_forms(3);
    auto rp = quasi_bv_report(bad_pi(m3));
    CHECK(rp.quasi_bv());
    CHECK(rp.consistent());
    CHECK(quasi_bv_report(so3_pi(m3)).quasi_bv());

    // [l_pi, i_pi] for the non-Poisson bivector is third order.
    LinearOperator d = differential_operator(m3);
    for (const auto& [ipi, poisson] : {std::pair{so3_pi(m3), true}, std::pair{bad_pi(m3), false}}) {
        LinearOperator l = commutator(ipi, d);
        auto r = quasi_bv_report(commutator(l, ipi));
        CHECK(r.quasi_bv() == poisson);
        CHECK(r.consistent());
        if (!poisson) CHECK_FALSE(r.certificate.find("(2) seven terms")->witness.empty());
    }
}

TEST_CASE("seven terms need more than generator triples") {
    // f = d^4/dx^4 vanishes on every product of at most three generators,
    // but it is not second order.
    auto m = FreeModel::make({{"x", 0}});
    NormalForm f(m);
    f.add(Element::constant(m, Scalar(1)), Monomial{{4}});
    Element x = Element::basis(m, Monomial{{1}});
    Element seven = f.apply(x * x * x);
    CHECK(seven.is_zero());
    auto r = quasi_bv_report(LinearOperator::from_normal_form(f));
    CHECK_FALSE(r.seven_terms);
    CHECK_FALSE(r.quasi_bv());
    CHECK(r.consistent());
}

TEST_CASE("random operators give identical verdicts on the four conditions") {
    auto m = mixed_model();
    std::mt19937 rng(31);
    int positive = 0, negative = 0;
    for (int trial = 0; trial < 40; ++trial) {
        NormalForm nf = random_normal_form(m, rng, trial % 4, 2, trial % 2 - 1, 3);
        if (nf.is_zero()) continue;
        auto r = quasi_bv_report(LinearOperator::from_normal_form(nf));
        CHECK(r.consistent());
        (r.quasi_bv() ? positive : negative)++;
    }
    CHECK(positive > 0);
    CHECK(negative > 0);
}

TEST_CASE("mu identity residual is a multiple of the seven-terms residual") {
    // Direct check of the (2) <=> (4) expansion at the level of values.
    auto m = FreeModel::make({{"x", 0}, {"e", 1}});
    NormalForm f(m);
    f.add(Element::constant(m, Scalar(1)), Monomial{{3, 0}});
    f.add(Element::basis(m, Monomial{{1, 1}}), Monomial{{2, 1}});
    auto r = quasi_bv_report(LinearOperator::from_normal_form(f));
    CHECK_FALSE(r.seven_terms);
    CHECK_FALSE(r.mu_identity);
    const auto* s = r.certificate.find("(2) seven terms");
    const auto* mu = r.certificate.find("(4) [f,mu_2] = [[f,mu_1],mu_1]");
    REQUIRE(s != nullptr);
    REQUIRE(mu != nullptr);
    // Both stop on the same first triple.
    CHECK(s->witness[0].value == mu->witness[0].value);
    CHECK(s->witness[1].value == mu->witness[1].value);
    CHECK(s->witness[2].value == mu->witness[2].value);
}

TEST_CASE("matrix operators on a finite model") {
    // Q[e]/(e^2) with e odd; multiplication by e and d/de.
    FiniteModel::Spec spec;
    spec.basis = {{"1", 0}, {"e", 1}};
    spec.product = {{{{0, Scalar(1)}}, {{1, Scalar(1)}}}, {{{1, Scalar(1)}}, {}}};
    auto fm = FiniteModel::make(spec);
    Element e = Element::basis(fm, FiniteModel::key(1));
    LinearOperator mul = left_multiplication(fm, e);
    CHECK(mul.kind() == LinearOperator::Kind::Matrix);
    CHECK(verify_order(mul, 0).passed);
    Matrix dm(2, 2);
    dm.at(0, 1) = Scalar(1);
    LinearOperator de = LinearOperator::from_matrix(fm, -1, dm);
    CHECK(verify_order(de, 1).passed);
    CHECK_FALSE(verify_order(de, 0).passed);
    CHECK(is_derivation(de).passed());
    auto r = quasi_bv_report(de);
    CHECK(r.quasi_bv());
    CHECK(r.consistent());
    Matrix bad(2, 2);
    bad.at(1, 0) = Scalar(1);
    CHECK_THROWS_AS(LinearOperator::from_matrix(fm, 0, bad), std::invalid_argument);
}

TEST_CASE("order is stable under scalar extension") {
    auto m = mixed_model();
    auto ext = adjoin_generator(*m, {"z", 0});
    std::mt19937 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        NormalForm nf = random_normal_form(m, rng, trial % 4, 2, 0);
        NormalForm big = extend_scalars(nf, ext);
        CHECK(big.order() == nf.order());
        Element z = Element::basis(ext, ext->generator_monomial(3));
        // f (x) Id commutes with the new scalar.
        if (!big.is_zero())
            CHECK(commutator_with_mult(LinearOperator::from_normal_form(big), z).normal_form()->is_zero());
    }
    CHECK_THROWS_AS(extend_scalars(NormalForm::identity(m), flat_forms(2)), std::invalid_argument);
}

}
