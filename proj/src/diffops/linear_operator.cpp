#include "koszul/diffops/linear_operator.hpp"

#include <stdexcept>

namespace koszul {

namespace {

Element matrix_apply(const ModelPtr& ptr, const Matrix& m, const Element& a) {
    Terms out;
    for (const auto& [key, c] : a.terms()) {
        const std::size_t j = FiniteModel::index(key);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!m.at(i, j).is_zero()) add_term(out, FiniteModel::key(i), c * m.at(i, j));
    }
    return Element(ptr, std::move(out));
}

std::shared_ptr<const FiniteModel> as_finite(const ModelPtr& m) {
    return std::dynamic_pointer_cast<const FiniteModel>(m);
}

std::shared_ptr<const FreeModel> as_free(const ModelPtr& m) { return std::dynamic_pointer_cast<const FreeModel>(m); }

Matrix matrix_of(const LinearOperator& f) {
    auto fm = as_finite(f.model());
    const std::size_t n = fm->dimension();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Element img = f(Element::basis(f.model(), FiniteModel::key(j)));
        for (const auto& [k, c] : img.terms()) m.at(FiniteModel::index(k), j) = c;
    }
    return m;
}

void require_same_model(const LinearOperator& f, const LinearOperator& g) {
    if (f.model() != g.model()) throw std::invalid_argument("LinearOperator: operators on different models");
}

}  // namespace

LinearOperator LinearOperator::from_normal_form(NormalForm nf, std::optional<int> degree) {
    if (!nf.model()) throw std::invalid_argument("LinearOperator: normal form without model");
    auto d = nf.degree();
    if (!nf.is_zero() && !d) throw std::invalid_argument("LinearOperator: normal form is not homogeneous");
    if (nf.is_zero() && !degree) throw std::invalid_argument("LinearOperator: degree of a zero operator is required");
    if (d && degree && *d != *degree) throw std::invalid_argument("LinearOperator: degree mismatch");
    LinearOperator op;
    op.kind_ = Kind::NormalForm;
    op.model_ = nf.model();
    op.degree_ = d ? *d : *degree;
    op.label_ = "normal form";
    op.nf_ = std::move(nf);
    return op;
}

LinearOperator LinearOperator::from_matrix(std::shared_ptr<const FiniteModel> model, int degree, Matrix m) {
    const std::size_t n = model->dimension();
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("LinearOperator: matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(i, j).is_zero() && model->basis()[i].degree != model->basis()[j].degree + degree)
                throw std::invalid_argument("LinearOperator: matrix is not of degree " + std::to_string(degree));
    LinearOperator op;
    op.kind_ = Kind::Matrix;
    op.model_ = model;
    op.degree_ = degree;
    op.label_ = "matrix";
    op.matrix_ = std::move(m);
    return op;
}

LinearOperator LinearOperator::opaque(ModelPtr model, int degree, Evaluator f, std::string label) {
    if (!model || !f) throw std::invalid_argument("LinearOperator: opaque operator needs a model and an evaluator");
    LinearOperator op;
    op.kind_ = Kind::Opaque;
    op.model_ = std::move(model);
    op.degree_ = degree;
    op.label_ = std::move(label);
    op.eval_ = std::move(f);
    return op;
}

Element LinearOperator::operator()(const Element& a) const {
    if (a.model() && a.model() != model_) throw std::invalid_argument("LinearOperator: argument from another model");
    switch (kind_) {
        case Kind::NormalForm:
            return nf_.apply(a);
        case Kind::Matrix:
            return matrix_apply(model_, matrix_, a);
        case Kind::Opaque: {
            Element r = eval_(a);
            return r.model() ? r : Element(model_, r.terms());
        }
    }
    return Element(model_, {});
}

LinearOperator left_multiplication(ModelPtr model, const Element& a) {
    auto deg = a.degree();
    if (!a.is_zero() && !deg) throw std::invalid_argument("left_multiplication: element is not homogeneous");
    if (auto free = as_free(model)) return LinearOperator::from_normal_form(NormalForm::multiplication(free, a), deg ? *deg : 0);
    if (auto fin = as_finite(model)) {
        auto op = LinearOperator::opaque(model, deg ? *deg : 0, [a](const Element& b) { return a * b; });
        return LinearOperator::from_matrix(fin, op.degree(), matrix_of(op));
    }
    return LinearOperator::opaque(model, deg ? *deg : 0, [a](const Element& b) { return a * b; }, "multiplication");
}

LinearOperator differential_operator(ModelPtr model) {
    if (!model->has_differential()) throw std::invalid_argument("differential_operator: model has no differential");
    if (auto free = as_free(model)) {
        std::vector<Element> images;
        for (std::size_t g = 0; g < free->size(); ++g) images.emplace_back(model, free->differential_of_generator(g));
        return LinearOperator::from_normal_form(NormalForm::derivation(free, images), 1);
    }
    auto op = LinearOperator::opaque(model, 1, [](const Element& a) { return apply_differential(a); }, "d");
    if (auto fin = as_finite(model)) return LinearOperator::from_matrix(fin, 1, matrix_of(op));
    return op;
}

LinearOperator compose(const LinearOperator& f, const LinearOperator& g) {
    require_same_model(f, g);
    const int deg = f.degree() + g.degree();
    if (f.normal_form() && g.normal_form())
        return LinearOperator::from_normal_form(f.normal_form()->compose(*g.normal_form()), deg);
    if (f.matrix() && g.matrix())
        return LinearOperator::from_matrix(as_finite(f.model()), deg, *f.matrix() * *g.matrix());
    return LinearOperator::opaque(f.model(), deg, [f, g](const Element& a) { return f(g(a)); }, "composite");
}

LinearOperator operator+(const LinearOperator& f, const LinearOperator& g) {
    require_same_model(f, g);
    if (f.degree() != g.degree()) throw std::invalid_argument("LinearOperator: sum of operators of different degrees");
    if (f.normal_form() && g.normal_form())
        return LinearOperator::from_normal_form(*f.normal_form() + *g.normal_form(), f.degree());
    if (f.matrix() && g.matrix()) {
        Matrix m = *f.matrix();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) += g.matrix()->at(i, j);
        return LinearOperator::from_matrix(as_finite(f.model()), f.degree(), std::move(m));
    }
    return LinearOperator::opaque(f.model(), f.degree(), [f, g](const Element& a) { return f(a) + g(a); }, "sum");
}

LinearOperator operator*(const Scalar& c, const LinearOperator& f) {
    if (f.normal_form()) return LinearOperator::from_normal_form(c * *f.normal_form(), f.degree());
    if (f.matrix()) {
        Matrix m = *f.matrix();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= c;
        return LinearOperator::from_matrix(as_finite(f.model()), f.degree(), std::move(m));
    }
    return LinearOperator::opaque(f.model(), f.degree(), [f, c](const Element& a) { return c * f(a); }, f.label());
}

LinearOperator commutator(const LinearOperator& f, const LinearOperator& g) {
    const bool both_odd = (f.degree() % 2 != 0) && (g.degree() % 2 != 0);
    return compose(f, g) + Scalar(both_odd ? 1 : -1) * compose(g, f);
}

LinearOperator commutator_with_mult(const LinearOperator& f, const Element& a) {
    return commutator(f, left_multiplication(f.model(), a));
}

MultiOp as_multiop(const LinearOperator& f, const ShiftedSpace& space) {
    if (space.model != f.model()) throw std::invalid_argument("as_multiop: operator lives on another model");
    ModelPtr model = f.model();
    return MultiOp(space, 1, f.degree(), [f, model](std::span<const Monomial> k) {
        return f(Element::basis(model, k[0]));
    });
}

bool agree_on(const LinearOperator& f, const LinearOperator& g, const std::vector<Element>& window) {
    for (const auto& a : window)
        if (f(a) != g(a)) return false;
    return true;
}

}  // namespace koszul
