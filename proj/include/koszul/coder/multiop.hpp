#pragma once

#include "koszul/core/element.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace koszul {

/// V = A[2k]: the underlying model with an even desuspension.
struct ShiftedSpace {
    ModelPtr model;
    int k = 0;

    int v_degree(const Monomial& m) const { return model->degree(m) - 2 * k; }
    friend bool operator==(const ShiftedSpace& a, const ShiftedSpace& b) {
        return a.model == b.model && a.k == b.k;
    }
};

/// Graded symmetric multilinear map Sym^{arity} V -> V of fixed V-degree,
/// i.e. an element of D_{arity-1}(V). Represented by its values on tuples of
/// basis keys; values are memoized, and a MultiOp is cheap to copy.
class MultiOp {
public:
    using Kernel = std::function<Element(std::span<const Monomial>)>;

    MultiOp(ShiftedSpace space, int arity, int degree, Kernel kernel,
            std::optional<int> order_bound = std::nullopt);

    static MultiOp zero(ShiftedSpace space, int arity, int degree);

    /// Arity-1 map from an evaluator on Elements.
    static MultiOp unary(ShiftedSpace space, int degree, std::function<Element(const Element&)> f);

    const ShiftedSpace& space() const { return space_; }
    int arity() const { return arity_; }
    /// n such that the map lives in D_n(V).
    int index() const { return arity_ - 1; }
    int degree() const { return degree_; }
    bool known_zero() const { return impl_ == nullptr; }
    std::optional<int> order_bound() const { return order_bound_; }

    /// Value on basis keys (memoized).
    Element on_basis(std::span<const Monomial> keys) const;
    /// Multilinear extension to arbitrary elements.
    Element operator()(std::span<const Element> args) const;
    Element operator()(std::initializer_list<Element> args) const {
        return (*this)(std::span<const Element>(args.begin(), args.size()));
    }

    friend MultiOp operator+(const MultiOp& a, const MultiOp& b);
    friend MultiOp operator-(const MultiOp& a, const MultiOp& b);
    friend MultiOp operator*(const Scalar& c, const MultiOp& a);
    MultiOp operator-() const { return Scalar(-1) * *this; }

private:
    struct Impl;
    ShiftedSpace space_;
    int arity_ = 1;
    int degree_ = 0;
    std::optional<int> order_bound_;
    std::shared_ptr<Impl> impl_;
};

/// Element of D(V) = prod_n D_n(V), with components keyed by n (arity n+1).
using OpSeries = std::map<int, MultiOp>;

void add_component(OpSeries& series, const MultiOp& op, const Scalar& c = Scalar(1));
OpSeries operator+(const OpSeries& a, const OpSeries& b);
OpSeries operator*(const Scalar& c, const OpSeries& a);

}  // namespace koszul
