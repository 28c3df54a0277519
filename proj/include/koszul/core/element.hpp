#pragma once

#include "koszul/core/model.hpp"

#include <map>
#include <optional>
#include <string>

namespace koszul {

/// Sparse element of an AlgebraModel. A default-constructed Element is the
/// zero of every model; it adopts the model of whatever it is combined with.
class Element {
public:
    Element() = default;
    Element(ModelPtr model, Terms terms);

    static Element basis(ModelPtr model, const Monomial& m, const Scalar& c = Scalar(1));
    static Element constant(ModelPtr model, const Scalar& c);

    const ModelPtr& model() const { return model_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Degree of a nonzero homogeneous element; nullopt for zero (whose
    /// degree is undefined) and for inhomogeneous elements.
    std::optional<int> degree() const;
    bool is_homogeneous() const { return is_zero() || degree().has_value(); }
    std::map<int, Element> homogeneous_components() const;
    /// Coefficient of a basis key (zero if absent).
    Scalar coefficient(const Monomial& m) const;

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Scalar& c);
    Element operator-() const;

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& c, Element a) { return a *= c; }
    friend Element operator*(const Element& a, const Element& b);

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    ModelPtr model_;
    Terms terms_;
};

/// Bilinear, associative, graded-commutative product. Elements of different
/// models are rejected with std::invalid_argument.
Element multiply(const Element& a, const Element& b);

/// d(a); zero when the model carries no differential.
Element apply_differential(const Element& a);

/// The shared model of a and b (either may be the model-less zero).
ModelPtr common_model(const Element& a, const Element& b);

}  // namespace koszul
