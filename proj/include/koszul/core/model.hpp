#pragma once

#include "koszul/core/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace koszul {

/// Basis key of a model. For a FreeModel `exps[i]` is the exponent of
/// generator i (0/1 for odd generators); for a FiniteModel `exps` holds a
/// single basis index.
struct Monomial {
    std::vector<int> exps;
    auto operator<=>(const Monomial&) const = default;
};

/// Sparse linear combination of basis keys; zero coefficients are never stored.
using Terms = std::map<Monomial, Scalar>;

void add_term(Terms& terms, const Monomial& m, const Scalar& c);
void add_terms(Terms& into, const Terms& from, const Scalar& factor = Scalar(1));

struct Generator {
    std::string name;
    int degree = 0;
    bool odd() const { return degree % 2 != 0; }
};

class AlgebraModel {
public:
    virtual ~AlgebraModel() = default;

    virtual int degree(const Monomial& m) const = 0;
    /// Product of two basis keys, already sign-normalized.
    virtual Terms multiply(const Monomial& a, const Monomial& b) const = 0;
    virtual Terms differential(const Monomial& m) const = 0;
    virtual bool has_differential() const = 0;
    virtual Monomial unit() const = 0;
    virtual std::string format(const Monomial& m) const = 0;

    bool odd(const Monomial& m) const { return degree(m) % 2 != 0; }
};

using ModelPtr = std::shared_ptr<const AlgebraModel>;

/// Free graded-commutative algebra: polynomial in the even generators,
/// exterior in the odd ones. Odd factors of a monomial are kept in
/// generator declaration order; reordering signs go into the coefficient.
class FreeModel final : public AlgebraModel {
public:
    /// `differential` is either empty (no differential) or holds d(g) for
    /// every generator g. Each image must be homogeneous of degree deg(g)+1
    /// and d must square to zero; otherwise std::invalid_argument.
    static std::shared_ptr<const FreeModel> make(std::vector<Generator> generators,
                                                 std::vector<Terms> differential = {});

    std::size_t size() const { return generators_.size(); }
    const std::vector<Generator>& generators() const { return generators_; }
    const Generator& generator(std::size_t i) const { return generators_.at(i); }
    std::optional<std::size_t> find(std::string_view name) const;

    Monomial generator_monomial(std::size_t i) const;
    Monomial one() const { return Monomial{std::vector<int>(generators_.size(), 0)}; }
    const Terms& differential_of_generator(std::size_t i) const { return differential_.at(i); }

    /// Number of generator factors (sum of exponents).
    static int count(const Monomial& m);

    int degree(const Monomial& m) const override;
    Terms multiply(const Monomial& a, const Monomial& b) const override;
    Terms differential(const Monomial& m) const override;
    bool has_differential() const override { return !differential_.empty(); }
    Monomial unit() const override { return one(); }
    std::string format(const Monomial& m) const override;

    /// All monomials with at most `max_count` generator factors, in
    /// deterministic (lexicographic) order.
    std::vector<Monomial> monomials_up_to(int max_count) const;

private:
    FreeModel() = default;
    std::vector<Generator> generators_;
    std::vector<Terms> differential_;
};

/// Finite-dimensional graded-commutative algebra given by a graded basis,
/// structure constants and a differential matrix. Basis key i is
/// Monomial{{i}}.
class FiniteModel final : public AlgebraModel {
public:
    struct Spec {
        std::vector<Generator> basis;
        std::size_t unit = 0;
        /// product[i][j] = e_i * e_j, indexed by basis position.
        std::vector<std::vector<std::map<std::size_t, Scalar>>> product;
        /// differential[j] = d(e_j); empty for no differential.
        std::vector<std::map<std::size_t, Scalar>> differential;
    };

    /// Validates degrees, unit, associativity, graded commutativity, Leibniz
    /// and d^2 = 0 on all basis tuples; throws std::invalid_argument.
    static std::shared_ptr<const FiniteModel> make(Spec spec);

    std::size_t dimension() const { return spec_.basis.size(); }
    const std::vector<Generator>& basis() const { return spec_.basis; }
    static Monomial key(std::size_t i) { return Monomial{{static_cast<int>(i)}}; }
    static std::size_t index(const Monomial& m) { return static_cast<std::size_t>(m.exps.at(0)); }
    std::optional<std::size_t> find(std::string_view name) const;

    int degree(const Monomial& m) const override;
    Terms multiply(const Monomial& a, const Monomial& b) const override;
    Terms differential(const Monomial& m) const override;
    bool has_differential() const override { return !spec_.differential.empty(); }
    Monomial unit() const override { return key(spec_.unit); }
    std::string format(const Monomial& m) const override;

private:
    FiniteModel() = default;
    Spec spec_;
};

}  // namespace koszul
