#pragma once

#include "koszul/core/element.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace koszul::cli {

/// Payload text that does not parse; `column` is 1-based.
struct ParseError : std::invalid_argument {
    ParseError(const std::string& what, std::size_t col)
        : std::invalid_argument(what), column(col) {}
    std::size_t column;
};

/// Sum of terms joined by + and -, each term a product of factors separated
/// by `*` or `/\`. A factor is an integer or rational (`3/4`, optionally in
/// parentheses) or a basis name with an optional `^exponent`. Names are the
/// model's generators (free models: `x1`, `dx2`, `d/dx3`) or basis elements
/// (finite models). Factors multiply left to right in the model, so the
/// graded signs follow from the product: `dx2 /\ dx1` is `-dx1 /\ dx2`.
/// Element::to_string output parses back to the same element.
Element parse_element(const ModelPtr& model, std::string_view text);

}  // namespace koszul::cli
