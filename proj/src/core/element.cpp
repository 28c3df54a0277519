#include "koszul/core/element.hpp"

#include <stdexcept>

namespace koszul {

Element::Element(ModelPtr model, Terms terms) : model_(std::move(model)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

Element Element::basis(ModelPtr model, const Monomial& m, const Scalar& c) {
    Terms t;
    add_term(t, m, c);
    return Element(std::move(model), std::move(t));
}

Element Element::constant(ModelPtr model, const Scalar& c) {
    Monomial one = model->unit();
    return basis(std::move(model), one, c);
}

std::optional<int> Element::degree() const {
    if (terms_.empty()) return std::nullopt;
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
        int d = model_->degree(m);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::map<int, Element> Element::homogeneous_components() const {
    std::map<int, Terms> parts;
    for (const auto& [m, c] : terms_) parts[model_->degree(m)].emplace(m, c);
    std::map<int, Element> out;
    for (auto& [d, t] : parts) out.emplace(d, Element(model_, std::move(t)));
    return out;
}

Scalar Element::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

ModelPtr common_model(const Element& a, const Element& b) {
    if (!a.model()) return b.model();
    if (!b.model()) return a.model();
    if (a.model() != b.model()) throw std::invalid_argument("elements belong to different models");
    return a.model();
}

Element& Element::operator+=(const Element& o) {
    model_ = common_model(*this, o);
    add_terms(terms_, o.terms_);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    model_ = common_model(*this, o);
    add_terms(terms_, o.terms_, Scalar(-1));
    return *this;
}

Element& Element::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Element Element::operator-() const {
    Element r = *this;
    r *= Scalar(-1);
    return r;
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element multiply(const Element& a, const Element& b) {
    ModelPtr model = common_model(a, b);
    if (a.is_zero() || b.is_zero()) return Element(model, {});
    Terms r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) add_terms(r, model->multiply(ma, mb), ca * cb);
    return Element(model, std::move(r));
}

Element apply_differential(const Element& a) {
    if (a.is_zero()) return a;
    Terms r;
    for (const auto& [m, c] : a.terms()) add_terms(r, a.model()->differential(m), c);
    return Element(a.model(), std::move(r));
}

std::string Element::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string body = model_->format(m);
        Scalar mag = c.sign() < 0 ? -c : c;
        if (first)
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        first = false;
        if (body == "1")
            out += mag.to_string();
        else if (mag.is_one())
            out += body;
        else
            out += mag.to_string() + " * " + body;
    }
    return out;
}

}  // namespace koszul
