#pragma once

#include "koszul/core/element.hpp"

#include <map>
#include <vector>

namespace koszul {

/// Linear combination of words a_0 . ... . a_m in the reduced symmetric
/// coalgebra over a model. Each stored word is sorted by basis key, with
/// the Koszul sign of the sorting absorbed into the coefficient; words
/// repeating an odd letter vanish.
class SymTensor {
public:
    using Word = std::vector<Monomial>;

    SymTensor() = default;
    explicit SymTensor(ModelPtr model) : model_(std::move(model)) {}

    /// a_0 . ... . a_m for arbitrary (multilinearly expanded) letters.
    static SymTensor word(ModelPtr model, const std::vector<Element>& letters, const Scalar& c = Scalar(1));

    const ModelPtr& model() const { return model_; }
    const std::map<Word, Scalar>& words() const { return words_; }
    bool is_zero() const { return words_.empty(); }
    std::size_t max_length() const;

    /// Adds c * (letters in the given order), canonicalizing.
    void add_word(Word letters, const Scalar& c);

    /// Words of exactly the given length.
    SymTensor length_component(std::size_t length) const;
    /// Projection onto V (the length-one words), as an Element.
    Element project() const;

    SymTensor& operator+=(const SymTensor& o);
    SymTensor& operator-=(const SymTensor& o);
    SymTensor& operator*=(const Scalar& c);
    friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
    friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
    friend SymTensor operator*(const Scalar& c, SymTensor a) { return a *= c; }
    friend bool operator==(const SymTensor& a, const SymTensor& b) { return a.words_ == b.words_; }

    std::string to_string() const;

private:
    ModelPtr model_;
    std::map<Word, Scalar> words_;
};

}  // namespace koszul
