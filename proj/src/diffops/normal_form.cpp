#include "koszul/diffops/normal_form.hpp"

#include <stdexcept>

namespace koszul {

namespace {

int key_parity_before(const FreeModel& model, const Monomial& key, std::size_t g) {
    long s = 0;
    for (std::size_t i = 0; i < g; ++i) s += static_cast<long>(key.exps[i]) * model.generator(i).degree;
    return static_cast<int>(((s % 2) + 2) % 2);
}

}  // namespace

Terms left_derivative(const FreeModel& model, std::size_t g, const Monomial& m) {
    Terms out;
    if (m.exps.at(g) == 0) return out;
    Monomial r = m;
    r.exps[g] -= 1;
    Scalar c(m.exps[g]);
    if (model.generator(g).odd() && key_parity_before(model, m, g)) c = -c;
    out.emplace(std::move(r), c);
    return out;
}

NormalForm NormalForm::identity(std::shared_ptr<const FreeModel> model) {
    NormalForm nf(model);
    nf.add(Element::constant(model, Scalar(1)), model->one());
    return nf;
}

NormalForm NormalForm::multiplication(std::shared_ptr<const FreeModel> model, const Element& a) {
    NormalForm nf(model);
    nf.add(a, model->one());
    return nf;
}

NormalForm NormalForm::partial(std::shared_ptr<const FreeModel> model, std::size_t g) {
    if (g >= model->size()) throw std::invalid_argument("NormalForm: generator index out of range");
    NormalForm nf(model);
    nf.add(Element::constant(model, Scalar(1)), model->generator_monomial(g));
    return nf;
}

NormalForm NormalForm::derivation(std::shared_ptr<const FreeModel> model, const std::vector<Element>& images) {
    if (images.size() != model->size()) throw std::invalid_argument("NormalForm: one image per generator required");
    NormalForm nf(model);
    for (std::size_t g = 0; g < images.size(); ++g) nf.add(images[g], model->generator_monomial(g));
    return nf;
}

void NormalForm::add(const Element& c, const Key& key) {
    if (c.is_zero()) return;
    if (!model_) throw std::invalid_argument("NormalForm: no model");
    if (c.model() && c.model() != model_) throw std::invalid_argument("NormalForm: coefficient from another model");
    if (key.exps.size() != model_->size()) throw std::invalid_argument("NormalForm: malformed key");
    for (std::size_t i = 0; i < key.exps.size(); ++i)
        if (key.exps[i] < 0 || (model_->generator(i).odd() && key.exps[i] > 1))
            throw std::invalid_argument("NormalForm: malformed key");
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int NormalForm::order() const {
    int r = -1;
    for (const auto& [k, c] : terms_) r = std::max(r, FreeModel::count(k));
    return r;
}

std::optional<int> NormalForm::degree() const {
    std::optional<int> deg;
    for (const auto& [k, c] : terms_) {
        auto cd = c.degree();
        if (!cd) return std::nullopt;
        int kd = 0;
        for (std::size_t i = 0; i < k.exps.size(); ++i) kd += k.exps[i] * model_->generator(i).degree;
        const int d = *cd - kd;
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

Element NormalForm::apply(const Element& a) const {
    if (a.is_zero() || terms_.empty()) return Element(model_, {});
    if (a.model() && a.model() != model_) throw std::invalid_argument("NormalForm: argument from another model");
    Element out(model_, {});
    for (const auto& [key, c] : terms_) {
        Terms cur = a.terms();
        for (std::size_t i = key.exps.size(); i-- > 0;)
            for (int rep = 0; rep < key.exps[i] && !cur.empty(); ++rep) {
                Terms next;
                for (const auto& [m, v] : cur) add_terms(next, left_derivative(*model_, i, m), v);
                cur = std::move(next);
            }
        if (!cur.empty()) out += c * Element(model_, std::move(cur));
    }
    return out;
}

void NormalForm::add_partial_then(std::size_t g, const Element& c, const Key& key, const Scalar& factor) {
    // d/dg o (c D^K) = d/dg(c) D^K + (-1)^{|g||c|} c (d/dg o D^K)
    const Generator& gen = model_->generator(g);
    for (const auto& [m, v] : c.terms()) {
        Terms dc = left_derivative(*model_, g, m);
        if (!dc.empty()) add(Element(model_, dc) * Element::constant(model_, factor * v), key);
        if (gen.odd() && key.exps[g] == 1) continue;
        Scalar s = factor * v;
        if (gen.odd() && model_->odd(m)) s = -s;
        if (gen.odd() && key_parity_before(*model_, key, g)) s = -s;
        Key nk = key;
        nk.exps[g] += 1;
        add(Element::basis(model_, m, s), nk);
    }
}

NormalForm NormalForm::compose(const NormalForm& other) const {
    if (other.model_ && model_ && other.model_ != model_) throw std::invalid_argument("NormalForm: mixed models");
    NormalForm out(model_ ? model_ : other.model_);
    for (const auto& [key, c] : terms_) {
        NormalForm cur = other;
        for (std::size_t i = key.exps.size(); i-- > 0;)
            for (int rep = 0; rep < key.exps[i] && !cur.is_zero(); ++rep) {
                NormalForm next(model_);
                for (const auto& [k2, c2] : cur.terms_) next.add_partial_then(i, c2, k2, Scalar(1));
                cur = std::move(next);
            }
        for (const auto& [k2, c2] : cur.terms_) out.add(c * c2, k2);
    }
    return out;
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
    if (!model_) model_ = o.model_;
    if (o.model_ && o.model_ != model_) throw std::invalid_argument("NormalForm: mixed models");
    for (const auto& [k, c] : o.terms_) add(c, k);
    return *this;
}

NormalForm& NormalForm::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

std::string NormalForm::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        const bool plain = FreeModel::count(k) == 0;
        out += plain ? "(" + c.to_string() + ")" : "(" + c.to_string() + ") * D[" + model_->format(k) + "]";
    }
    return out;
}

NormalForm extend_scalars(const NormalForm& nf, std::shared_ptr<const FreeModel> extended) {
    const auto& base = nf.model();
    if (!base || extended->size() < base->size())
        throw std::invalid_argument("extend_scalars: target model is smaller");
    for (std::size_t i = 0; i < base->size(); ++i)
        if (extended->generator(i).name != base->generator(i).name ||
            extended->generator(i).degree != base->generator(i).degree)
            throw std::invalid_argument("extend_scalars: generator mismatch at " + base->generator(i).name);
    auto pad = [&](const Monomial& m) {
        Monomial r = m;
        r.exps.resize(extended->size(), 0);
        return r;
    };
    NormalForm out(extended);
    for (const auto& [k, c] : nf.terms()) {
        Terms t;
        for (const auto& [m, v] : c.terms()) t.emplace(pad(m), v);
        out.add(Element(extended, std::move(t)), pad(k));
    }
    return out;
}

std::shared_ptr<const FreeModel> adjoin_generator(const FreeModel& model, Generator g) {
    std::vector<Generator> gens = model.generators();
    gens.push_back(std::move(g));
    std::vector<Terms> d;
    if (model.has_differential()) {
        for (std::size_t i = 0; i < model.size(); ++i) {
            Terms t;
            for (const auto& [m, v] : model.differential_of_generator(i)) {
                Monomial r = m;
                r.exps.push_back(0);
                t.emplace(std::move(r), v);
            }
            d.push_back(std::move(t));
        }
        d.emplace_back();
    }
    return FreeModel::make(std::move(gens), std::move(d));
}

}  // namespace koszul
