#include "koszul/coder/sym_tensor.hpp"

#include "koszul/core/permutations.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace koszul {

SymTensor SymTensor::word(ModelPtr model, const std::vector<Element>& letters, const Scalar& c) {
    SymTensor t(model);
    for (const auto& l : letters) {
        if (l.model() && l.model() != model) throw std::invalid_argument("SymTensor: letter from another model");
        if (l.is_zero()) return t;
    }
    Word w(letters.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& coeff) {
        if (i == letters.size()) {
            t.add_word(w, coeff);
            return;
        }
        for (const auto& [m, v] : letters[i].terms()) {
            w[i] = m;
            rec(i + 1, coeff * v);
        }
    };
    rec(0, c);
    return t;
}

std::size_t SymTensor::max_length() const {
    std::size_t n = 0;
    for (const auto& [w, c] : words_) n = std::max(n, w.size());
    return n;
}

void SymTensor::add_word(Word letters, const Scalar& c) {
    if (c.is_zero() || letters.empty()) return;
    std::vector<int> perm(letters.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return letters[a] < letters[b]; });
    std::vector<int> parities(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) parities[i] = model_->odd(letters[i]) ? 1 : 0;
    const int sign = koszul_sign_unchecked(perm, parities);
    Word sorted(letters.size());
    for (std::size_t i = 0; i < perm.size(); ++i) sorted[i] = letters[perm[i]];
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1] && model_->odd(sorted[i])) return;
    auto [it, inserted] = words_.try_emplace(std::move(sorted), sign > 0 ? c : -c);
    if (inserted) return;
    it->second += sign > 0 ? c : -c;
    if (it->second.is_zero()) words_.erase(it);
}

SymTensor SymTensor::length_component(std::size_t length) const {
    SymTensor r(model_);
    for (const auto& [w, c] : words_)
        if (w.size() == length) r.words_.emplace(w, c);
    return r;
}

Element SymTensor::project() const {
    Terms t;
    for (const auto& [w, c] : words_)
        if (w.size() == 1) add_term(t, w[0], c);
    return Element(model_, std::move(t));
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
    if (!model_) model_ = o.model_;
    if (o.model_ && o.model_ != model_) throw std::invalid_argument("SymTensor: mixed models");
    for (const auto& [w, c] : o.words_) {
        auto [it, inserted] = words_.try_emplace(w, c);
        if (inserted) continue;
        it->second += c;
        if (it->second.is_zero()) words_.erase(it);
    }
    return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
    SymTensor neg = o;
    neg *= Scalar(-1);
    return *this += neg;
}

SymTensor& SymTensor::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        words_.clear();
        return *this;
    }
    for (auto& [w, v] : words_) v *= c;
    return *this;
}

std::string SymTensor::to_string() const {
    if (words_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : words_) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.to_string() + ")";
        for (std::size_t i = 0; i < w.size(); ++i)
            out += (i == 0 ? " [" : " | ") + model_->format(w[i]);
        out += "]";
    }
    return out;
}

}  // namespace koszul
