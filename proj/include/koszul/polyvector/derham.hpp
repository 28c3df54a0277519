#pragma once

#include "koszul/core/certificate.hpp"
#include "koszul/diffops/linear_operator.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// Flat polynomial de Rham model on n coordinates together with its algebra
/// of polyvector fields. Forms: x_i (degree 0), dx_i (degree 1), d x_i = dx_i.
/// Polyvectors: x_i (degree 0), d/dx_i (degree -1), so an arity-p field has
/// degree -p. Both models index x_i by i-1, so polynomial coefficients move
/// between them unchanged.
class DeRham {
public:
    static std::shared_ptr<const DeRham> make(int n);

    int dimension() const { return n_; }
    const std::shared_ptr<const FreeModel>& forms() const { return forms_; }
    const std::shared_ptr<const FreeModel>& vectors() const { return vectors_; }

    /// 1-based coordinates.
    Element x(int i) const;
    Element dx(int i) const;
    Element vx(int i) const;
    Element partial(int i) const;

    /// Moves a polynomial (no odd factors) between the two models; throws
    /// std::invalid_argument otherwise.
    Element function_to_forms(const Element& f) const;
    Element function_to_vectors(const Element& f) const;

    /// Basis forms with polynomial degree <= poly_degree and form degree <=
    /// form_degree, in deterministic order.
    std::vector<Element> form_window(int poly_degree, int form_degree) const;
    /// Basis polyvectors with coefficient degree <= poly_degree and arity <= max_arity.
    std::vector<Element> polyvector_window(int poly_degree, int max_arity) const;

private:
    DeRham() = default;
    int n_ = 0;
    std::shared_ptr<const FreeModel> forms_;
    std::shared_ptr<const FreeModel> vectors_;
};

using DeRhamPtr = std::shared_ptr<const DeRham>;

/// Alternating multivector field with polynomial coefficients, stored as an
/// element of the polyvector algebra (indices sorted, sign absorbed).
class Polyvector {
public:
    Polyvector() = default;
    /// Throws std::invalid_argument unless v lives in the polyvector model.
    Polyvector(const DeRham& model, Element v);

    const Element& element() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }
    /// p for a nonzero field of pure arity p; nullopt for zero or mixed.
    std::optional<int> arity() const;

    friend Polyvector operator+(Polyvector a, const Polyvector& b) {
        a.value_ += b.value_;
        return a;
    }
    friend Polyvector operator-(Polyvector a, const Polyvector& b) {
        a.value_ -= b.value_;
        return a;
    }
    friend Polyvector operator*(const Scalar& c, Polyvector a) {
        a.value_ *= c;
        return a;
    }
    friend bool operator==(const Polyvector& a, const Polyvector& b) { return a.value_ == b.value_; }
    std::string to_string() const { return value_.to_string(); }

private:
    Element value_;
};

/// i_eta as a normal-form operator: c * d/dx_I contracts as
/// c * iota_{i_1} o ... o iota_{i_p} with iota_i = d/d(dx_i) and iota_i(dx_j) = delta_ij.
LinearOperator interior_operator(const DeRham& m, const Polyvector& eta);
Element interior_product(const DeRham& m, const Polyvector& eta, const Element& alpha);

/// l_eta = [i_eta, d].
LinearOperator lie_operator(const DeRham& m, const Polyvector& eta);
Element lie_derivative(const DeRham& m, const Polyvector& eta, const Element& alpha);

/// Schouten-Nijenhuis bracket, in the convention [l_eta, i_mu] = i_[eta,mu].
/// Computed by the Leibniz expansion over coordinates; the first call runs a
/// self-test against the operator identity and throws std::logic_error on
/// disagreement.
Polyvector schouten(const DeRham& m, const Polyvector& eta, const Polyvector& mu);

/// The polyvector nu with op = i_nu, read off a normal form whose terms are
/// all polynomial coefficients times contractions; nullopt otherwise.
std::optional<Polyvector> extract_contraction(const DeRham& m, const LinearOperator& op);

/// [eta,mu] obtained from the normal form of [l_eta, i_mu] (second path).
std::optional<Polyvector> schouten_from_operators(const DeRham& m, const Polyvector& eta, const Polyvector& mu);

struct FormWindow {
    int poly_degree = 4;
    /// -1 means the full form degree n.
    int form_degree = -1;
};

/// [l_eta, d] = 0, [i_eta, i_mu] = 0, [l_eta, i_mu] = i_[eta,mu] and
/// [l_eta, l_mu] = l_[eta,mu]. Operators are compared as normal forms (exact)
/// and additionally evaluated on every basis form of the window.
Certificate cartan_suite(const DeRham& m, const Polyvector& eta, const Polyvector& mu, FormWindow window = {});

/// [pi,pi] = 0, with the trivector as witness. Throws std::invalid_argument
/// unless pi has arity 2 (or is zero).
Certificate is_poisson(const DeRham& m, const Polyvector& pi);

/// pi#(alpha) = sum_l i_pi(alpha /\ dx_l) d/dx_l, so that
/// i_{pi#(alpha)}(beta) = i_pi(alpha /\ beta). Throws std::invalid_argument
/// unless alpha is a 1-form (zero allowed).
Polyvector anchor_apply(const DeRham& m, const Polyvector& pi, const Element& alpha);

}  // namespace koszul
