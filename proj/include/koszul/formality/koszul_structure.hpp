#pragma once

#include "koszul/coder/coderivation.hpp"
#include "koszul/core/certificate.hpp"
#include "koszul/core/element_span.hpp"
#include "koszul/diffops/linear_operator.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// (A, d, i) with i quasi-BV of even degree -2k, and the derived data
///   l = [i,d],  R = [i,mu_1] in D_1(A[2k]),  Q = [l,mu_1] in D_1(A[2k]).
/// R and Q are built in D(V) through the pre-Lie bracket; the displayed
/// formulas are kept as a separate path for cross-checks.
class KoszulStructure {
public:
    const ModelPtr& model() const { return model_; }
    int k() const { return k_; }
    const ShiftedSpace& space() const { return space_; }

    const LinearOperator& i() const { return i_; }
    const LinearOperator& l() const { return l_; }
    const LinearOperator& d() const { return d_; }

    const MultiOp& R() const { return *R_; }
    const MultiOp& Q() const { return *Q_; }
    const MultiOp& d_op() const { return *d_op_; }
    const MultiOp& mu1() const { return *mu1_; }

    /// i(ab) - i(a)b - a i(b)
    Element r_formula(const Element& a, const Element& b) const;
    /// l(ab) - l(a)b - (-1)^a a l(b), a homogeneous.
    Element q_formula(const Element& a, const Element& b) const;

    /// Default test letters: basis monomials with at most `max_count`
    /// generator factors (whole basis on finite models).
    std::vector<Element> letters(int max_count = 2) const;

    /// Checks made while building: quasi-BV, both formulas, Q = [R,d].
    const Certificate& construction() const { return construction_; }

private:
    friend KoszulStructure build_RQ(const LinearOperator& i, int window);
    ModelPtr model_;
    int k_ = 0;
    ShiftedSpace space_;
    LinearOperator i_, l_, d_;
    std::optional<MultiOp> R_, Q_, d_op_, mu1_;
    Certificate construction_;
};

/// Builds the structure. Rejects (std::invalid_argument) an odd-degree i and
/// an i that is not quasi-BV, naming the failing condition. Q = [R,d] and the
/// displayed formulas are verified on pairs from letters(window); a failure
/// there is an internal error (std::logic_error).
KoszulStructure build_RQ(const LinearOperator& i, int window = 2);

/// [a,b]_Q = (-1)^a Q(a,b), the degree-0 bracket on A[2k-1]. a homogeneous.
Element decalage_bracket(const KoszulStructure& s, const Element& a, const Element& b);
/// [a,b]_l = (-1)^a (l(ab) - l(a)b) - a l(b), evaluated through l only.
Element theorem_bracket(const KoszulStructure& s, const Element& a, const Element& b);

/// Degree of a homogeneous element of A in the DGLA A[2k-1].
int dgla_degree(const KoszulStructure& s, const Element& a);

/// Graded antisymmetry, Jacobi, Leibniz compatibility with the product and
/// d as a derivation of the bracket; Jacobi on multisets of three letters,
/// the rest on ordered pairs (and triples for the Leibniz rule).
Certificate jacobi_antisym_suite(const KoszulStructure& s, const std::vector<Element>& letters);

/// The formality witness: (a) [Q,R] = 0 on letter triples; (b) e^R d e^{-R}
/// = d + Q on every word of length <= cap; (c) the components of the gauge
/// transform of d beyond Q vanish; plus the Jacobi suite. cap >= 3.
Certificate formality_witness(const KoszulStructure& s, int cap, const std::vector<Element>& letters);

/// l^2 = 0 on the letters (and structurally for normal forms).
Certificate bv_check(const KoszulStructure& s, const std::vector<Element>& letters);

/// A graded subspace B of A, described by a monomial predicate (B is spanned
/// by the basis monomials it accepts) or by a finite spanning set.
class Subspace {
public:
    static Subspace monomials(std::string description, std::function<bool(const Monomial&)> accept);
    /// B = sum of A^p over p >= p0.
    static Subspace degree_at_least(const ModelPtr& model, int p0);
    /// Ideal generated by the given generators (by name).
    static Subspace monomial_ideal(const ModelPtr& model, const std::vector<std::string>& generators);
    static Subspace span(std::string description, std::vector<Element> spanning);

    const std::string& description() const { return description_; }
    bool is_monomial() const { return !span_.has_value(); }
    bool contains(const Element& e) const;
    /// Elements of B used for testing: the accepted letters, or the spanning set.
    std::vector<Element> test_elements(const std::vector<Element>& letters) const;

private:
    std::string description_;
    std::function<bool(const Monomial&)> accept_;
    std::optional<ElementSpan> span_;
    std::vector<Element> spanning_;
};

/// d(B) in B and R(B,B) in B on the test elements; when both hold, B's words
/// are checked to be preserved by e^R (monomial subspaces) and the
/// formality witness restricted to B's letters is absorbed.
Certificate subcomplex_witness(const KoszulStructure& s, const Subspace& b, const std::vector<Element>& letters,
                               int cap = 3);

}  // namespace koszul
