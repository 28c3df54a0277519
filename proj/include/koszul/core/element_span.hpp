#pragma once

#include "koszul/core/element.hpp"
#include "koszul/core/linalg.hpp"

#include <optional>
#include <vector>

namespace koszul {

/// Linear span of finitely many Elements, with exact membership tests.
class ElementSpan {
public:
    explicit ElementSpan(std::vector<Element> spanning);

    const std::vector<Element>& spanning() const { return spanning_; }
    std::size_t dimension() const { return independent_.size(); }
    bool contains(const Element& x) const { return coordinates(x).has_value(); }
    /// Coefficients with respect to the spanning list (zero on redundant
    /// members), or nullopt when x lies outside the span.
    std::optional<Vec> coordinates(const Element& x) const;

private:
    std::vector<Element> spanning_;
    std::vector<Monomial> support_;
    Matrix matrix_;
    std::vector<std::size_t> independent_;
};

}  // namespace koszul
