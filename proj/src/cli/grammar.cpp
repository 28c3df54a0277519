#include "koszul/cli/grammar.hpp"

#include <cctype>
#include <optional>

namespace koszul::cli {

namespace {

std::optional<Element> lookup(const ModelPtr& model, std::string_view name) {
    if (auto fm = std::dynamic_pointer_cast<const FreeModel>(model)) {
        if (auto i = fm->find(name)) return Element::basis(model, fm->generator_monomial(*i));
    } else if (auto fin = std::dynamic_pointer_cast<const FiniteModel>(model)) {
        if (auto i = fin->find(name)) return Element::basis(model, FiniteModel::key(*i));
    }
    return std::nullopt;
}

class Parser {
public:
    Parser(const ModelPtr& model, std::string_view text) : model_(model), text_(text) {}

    Element parse() {
        skip();
        if (done()) fail("empty expression");
        Element sum(model_, {});
        bool first = true;
        while (!done()) {
            Scalar sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = Scalar(-1);
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            sum += sign * term();
            skip();
        }
        return sum;
    }

private:
    const ModelPtr& model_;
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("column " + std::to_string(pos_ + 1) + ": " + why, pos_ + 1);
    }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    void skip() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    Element term() {
        Element prod = factor();
        for (;;) {
            skip();
            if (at("/\\")) {
                pos_ += 2;
            } else if (peek() == '*') {
                ++pos_;
            } else {
                return prod;
            }
            skip();
            prod = prod * factor();
        }
    }

    std::string digits() {
        std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::string(text_.substr(start, pos_ - start));
    }

    Scalar rational() {
        std::string num = digits();
        if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            std::string den = digits();
            if (Scalar::parse(den).is_zero()) fail("zero denominator");
            return Scalar::parse(num + "/" + den);
        }
        return Scalar::parse(num);
    }

    Element factor() {
        if (done()) fail("expected a factor");
        const char c = peek();
        if (c == '(') {
            ++pos_;
            skip();
            Scalar sign(1);
            if (peek() == '-' || peek() == '+') {
                if (peek() == '-') sign = Scalar(-1);
                ++pos_;
                skip();
            }
            Scalar v = rational();
            skip();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return Element::constant(model_, sign * v);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Element::constant(model_, rational());
        if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected character '") + c + "'");

        const std::size_t start = pos_;
        if (at("d/") && pos_ + 2 < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_ + 2]))) pos_ += 2;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'')) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        auto base = lookup(model_, name);
        if (!base) {
            pos_ = start;
            fail("unknown name '" + std::string(name) + "'");
        }
        if (peek() != '^') return *base;
        ++pos_;
        const std::size_t at_exp = pos_;
        const std::string e = digits();
        if (e.size() > 3) {
            pos_ = at_exp;
            fail("exponent too large");
        }
        Element out = Element::constant(model_, Scalar(1));
        for (int i = 0, n = std::stoi(e); i < n; ++i) out = out * *base;
        return out;
    }
};

}  // namespace

Element parse_element(const ModelPtr& model, std::string_view text) { return Parser(model, text).parse(); }

}  // namespace koszul::cli
