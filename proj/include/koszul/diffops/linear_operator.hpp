#pragma once

#include "koszul/coder/multiop.hpp"
#include "koszul/core/linalg.hpp"
#include "koszul/diffops/normal_form.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace koszul {

/// Homogeneous linear endomorphism of a model. Three representations:
///   NormalForm  polydifferential operator on a FreeModel (exact algebra)
///   Matrix      on a FiniteModel, columns indexed by basis position
///   Opaque      evaluator only; certificates about it are sampled
class LinearOperator {
public:
    enum class Kind { NormalForm, Matrix, Opaque };
    using Evaluator = std::function<Element(const Element&)>;

    LinearOperator() = default;

    /// Throws std::invalid_argument unless nf is homogeneous or zero; a zero
    /// operator needs its degree spelled out.
    static LinearOperator from_normal_form(NormalForm nf, std::optional<int> degree = std::nullopt);
    /// Checks that the matrix shifts basis degrees by `degree`.
    static LinearOperator from_matrix(std::shared_ptr<const FiniteModel> model, int degree, Matrix m);
    static LinearOperator opaque(ModelPtr model, int degree, Evaluator f, std::string label = "opaque");

    Kind kind() const { return kind_; }
    const ModelPtr& model() const { return model_; }
    int degree() const { return degree_; }
    const std::string& label() const { return label_; }
    const NormalForm* normal_form() const { return kind_ == Kind::NormalForm ? &nf_ : nullptr; }
    const Matrix* matrix() const { return kind_ == Kind::Matrix ? &matrix_ : nullptr; }

    Element operator()(const Element& a) const;

private:
    Kind kind_ = Kind::Opaque;
    ModelPtr model_;
    int degree_ = 0;
    std::string label_;
    NormalForm nf_;
    Matrix matrix_;
    Evaluator eval_;
};

/// Left multiplication by a homogeneous element.
LinearOperator left_multiplication(ModelPtr model, const Element& a);
/// The model's differential as an operator (d = sum_g d(g) d/dg on free models).
LinearOperator differential_operator(ModelPtr model);

LinearOperator compose(const LinearOperator& f, const LinearOperator& g);
LinearOperator operator+(const LinearOperator& f, const LinearOperator& g);
LinearOperator operator*(const Scalar& c, const LinearOperator& f);
/// [f,g] = fg - (-1)^{|f||g|} gf.
LinearOperator commutator(const LinearOperator& f, const LinearOperator& g);
/// [f, a] with a acting by left multiplication.
LinearOperator commutator_with_mult(const LinearOperator& f, const Element& a);

/// f as an element of D_0(V).
MultiOp as_multiop(const LinearOperator& f, const ShiftedSpace& space);

/// True when both operators agree on every given element.
bool agree_on(const LinearOperator& f, const LinearOperator& g, const std::vector<Element>& window);

}  // namespace koszul
