#include "koszul/coder/multiop.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace koszul {

struct MultiOp::Impl {
    Kernel kernel;
    mutable std::shared_mutex mutex;
    mutable std::map<std::vector<Monomial>, Element> cache;
};

MultiOp::MultiOp(ShiftedSpace space, int arity, int degree, Kernel kernel, std::optional<int> order_bound)
    : space_(std::move(space)), arity_(arity), degree_(degree), order_bound_(order_bound) {
    if (arity < 1) throw std::invalid_argument("MultiOp: arity must be at least 1");
    if (!space_.model) throw std::invalid_argument("MultiOp: space has no model");
    if (kernel) {
        impl_ = std::make_shared<Impl>();
        impl_->kernel = std::move(kernel);
    }
}

MultiOp MultiOp::zero(ShiftedSpace space, int arity, int degree) {
    return MultiOp(std::move(space), arity, degree, Kernel{});
}

MultiOp MultiOp::unary(ShiftedSpace space, int degree, std::function<Element(const Element&)> f) {
    ModelPtr model = space.model;
    return MultiOp(std::move(space), 1, degree, [model, f = std::move(f)](std::span<const Monomial> keys) {
        return f(Element::basis(model, keys[0]));
    });
}

Element MultiOp::on_basis(std::span<const Monomial> keys) const {
    if (static_cast<int>(keys.size()) != arity_) throw std::invalid_argument("MultiOp: wrong number of arguments");
    if (!impl_) return Element(space_.model, {});
    std::vector<Monomial> key(keys.begin(), keys.end());
    {
        std::shared_lock lock(impl_->mutex);
        auto it = impl_->cache.find(key);
        if (it != impl_->cache.end()) return it->second;
    }
    Element value = impl_->kernel(keys);
    if (!value.model()) value = Element(space_.model, {});
    std::unique_lock lock(impl_->mutex);
    impl_->cache.emplace(std::move(key), value);
    return value;
}

Element MultiOp::operator()(std::span<const Element> args) const {
    if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("MultiOp: wrong number of arguments");
    Terms out;
    if (!impl_) return Element(space_.model, {});
    for (const auto& a : args) {
        if (a.model() && a.model() != space_.model)
            throw std::invalid_argument("MultiOp: argument from a different model");
        if (a.is_zero()) return Element(space_.model, {});
    }
    std::vector<Monomial> keys(args.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t slot, const Scalar& coeff) {
        if (slot == args.size()) {
            add_terms(out, on_basis(keys).terms(), coeff);
            return;
        }
        for (const auto& [m, c] : args[slot].terms()) {
            keys[slot] = m;
            rec(slot + 1, coeff * c);
        }
    };
    rec(0, Scalar(1));
    return Element(space_.model, std::move(out));
}

namespace {

void require_compatible(const MultiOp& a, const MultiOp& b) {
    if (!(a.space() == b.space())) throw std::invalid_argument("MultiOp: operands live on different spaces");
    if (a.arity() != b.arity() || a.degree() != b.degree())
        throw std::invalid_argument("MultiOp: sum of maps with different arity or degree");
}

std::optional<int> max_bound(const MultiOp& a, const MultiOp& b) {
    if (!a.order_bound() || !b.order_bound()) return std::nullopt;
    return std::max(*a.order_bound(), *b.order_bound());
}

}  // namespace

MultiOp operator+(const MultiOp& a, const MultiOp& b) {
    require_compatible(a, b);
    if (a.known_zero()) return b;
    if (b.known_zero()) return a;
    return MultiOp(a.space(), a.arity(), a.degree(),
                   [a, b](std::span<const Monomial> k) { return a.on_basis(k) + b.on_basis(k); },
                   max_bound(a, b));
}

MultiOp operator-(const MultiOp& a, const MultiOp& b) { return a + Scalar(-1) * b; }

MultiOp operator*(const Scalar& c, const MultiOp& a) {
    if (c.is_zero() || a.known_zero()) return MultiOp::zero(a.space(), a.arity(), a.degree());
    if (c.is_one()) return a;
    return MultiOp(a.space(), a.arity(), a.degree(),
                   [a, c](std::span<const Monomial> k) { return c * a.on_basis(k); }, a.order_bound());
}

void add_component(OpSeries& series, const MultiOp& op, const Scalar& c) {
    if (c.is_zero() || op.known_zero()) return;
    MultiOp scaled = c * op;
    auto it = series.find(op.index());
    if (it == series.end())
        series.emplace(op.index(), scaled);
    else
        it->second = it->second + scaled;
}

OpSeries operator+(const OpSeries& a, const OpSeries& b) {
    OpSeries r = a;
    for (const auto& [n, op] : b) add_component(r, op);
    return r;
}

OpSeries operator*(const Scalar& c, const OpSeries& a) {
    OpSeries r;
    for (const auto& [n, op] : a) add_component(r, op, c);
    return r;
}

}  // namespace koszul
