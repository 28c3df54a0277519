#include "koszul/core/element_span.hpp"

#include <algorithm>
#include <set>

namespace koszul {

ElementSpan::ElementSpan(std::vector<Element> spanning) : spanning_(std::move(spanning)) {
    std::set<Monomial> support;
    for (const auto& e : spanning_)
        for (const auto& [m, c] : e.terms()) support.insert(m);
    support_.assign(support.begin(), support.end());
    matrix_ = Matrix(support_.size(), spanning_.size());
    for (std::size_t c = 0; c < spanning_.size(); ++c)
        for (const auto& [m, v] : spanning_[c].terms()) {
            auto it = std::lower_bound(support_.begin(), support_.end(), m);
            matrix_.at(static_cast<std::size_t>(it - support_.begin()), c) = v;
        }
    independent_ = independent_columns(matrix_);
}

std::optional<Vec> ElementSpan::coordinates(const Element& x) const {
    Vec b(support_.size());
    for (const auto& [m, v] : x.terms()) {
        auto it = std::lower_bound(support_.begin(), support_.end(), m);
        if (it == support_.end() || *it != m) return std::nullopt;
        b[static_cast<std::size_t>(it - support_.begin())] = v;
    }
    return solve(matrix_, b);
}

}  // namespace koszul
