#pragma once

#include "koszul/core/element.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace koszul {

/// Left derivative d/dg of a basis monomial of a free model, as seen from
/// the left: the factor g is moved to the front (Koszul sign) and removed.
Terms left_derivative(const FreeModel& model, std::size_t g, const Monomial& m);

/// Polydifferential operator on a free model in normal order:
///     sum_K c_K * D^K,   D^K = D_1^{K_1} D_2^{K_2} ... D_n^{K_n},
/// with coefficients on the left and the left derivatives D_i = d/dg_i on
/// the right, in generator order (the rightmost factor acts first). K_i is
/// 0/1 for odd generators. Over a free graded-commutative algebra in
/// characteristic 0 this presentation is unique, so equality and order are
/// decided structurally.
class NormalForm {
public:
    using Key = Monomial;

    NormalForm() = default;
    explicit NormalForm(std::shared_ptr<const FreeModel> model) : model_(std::move(model)) {}

    static NormalForm identity(std::shared_ptr<const FreeModel> model);
    static NormalForm multiplication(std::shared_ptr<const FreeModel> model, const Element& a);
    /// d/dg for generator index g.
    static NormalForm partial(std::shared_ptr<const FreeModel> model, std::size_t g);
    /// The derivation sending generator i to images[i].
    static NormalForm derivation(std::shared_ptr<const FreeModel> model, const std::vector<Element>& images);

    const std::shared_ptr<const FreeModel>& model() const { return model_; }
    const std::map<Key, Element>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * D^key.
    void add(const Element& c, const Key& key);

    /// Highest |K| among the terms; -1 for the zero operator.
    int order() const;
    /// Degree of a homogeneous operator; nullopt for zero or mixed degrees.
    std::optional<int> degree() const;

    Element apply(const Element& a) const;
    Element operator()(const Element& a) const { return apply(a); }

    /// this o other, normal ordered.
    NormalForm compose(const NormalForm& other) const;

    NormalForm& operator+=(const NormalForm& o);
    NormalForm& operator*=(const Scalar& c);
    friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
    friend NormalForm operator-(NormalForm a, const NormalForm& b) { return a += Scalar(-1) * b; }
    friend NormalForm operator*(const Scalar& c, NormalForm a) { return a *= c; }
    friend bool operator==(const NormalForm& a, const NormalForm& b) { return a.terms_ == b.terms_; }

    /// e.g. "x1 * D[dx2] + 2 * D[x1^2]".
    std::string to_string() const;

private:
    // c * (d/dg o D^key), normal ordered.
    void add_partial_then(std::size_t g, const Element& c, const Key& key, const Scalar& factor);
    std::shared_ptr<const FreeModel> model_;
    std::map<Key, Element> terms_;
};

/// The same operator on the free model obtained by appending generators:
/// `extended` must start with the generators of nf.model() (same names,
/// degrees). Used to test stability of Diff_k under scalar extension.
NormalForm extend_scalars(const NormalForm& nf, std::shared_ptr<const FreeModel> extended);

/// A copy of `model` with one extra generator (d of it is zero).
std::shared_ptr<const FreeModel> adjoin_generator(const FreeModel& model, Generator g);

}  // namespace koszul
