#pragma once

#include "koszul/core/certificate.hpp"
#include "koszul/diffops/linear_operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszul {

enum class OrderMode { Syntactic, GeneratorRecursion, Sampled };
std::string to_string(OrderMode mode);

struct OrderCertificate {
    int claimed = 0;
    OrderMode mode = OrderMode::Syntactic;
    /// Algebra generators the recursion commutes with.
    std::vector<std::string> generators;
    /// Largest number of generator factors in a test monomial (sampled and
    /// recursion modes on opaque operators); 0 when no evaluation was needed.
    int window = 0;
    int recursion_depth = 0;
    bool passed = false;
    /// False for sampled passes: they only say nothing failed in the window.
    bool conclusive = true;
    std::vector<WitnessEntry> witness;
};

/// Is f in Diff_k? NormalForm operators are decided syntactically unless
/// another mode is requested; Matrix operators by commuting with every basis
/// vector (k+1 levels, exact); Opaque operators by the same recursion over
/// the generators, evaluated on the monomial window (sampled).
/// Throws std::invalid_argument for k < -1 or a syntactic request on a
/// non-NormalForm operator.
OrderCertificate verify_order(const LinearOperator& f, int k, std::optional<OrderMode> mode = std::nullopt,
                              int window = 4);

/// Smallest k with f in Diff_k for a NormalForm operator (-1 for zero).
int syntactic_order(const LinearOperator& f);

/// Test elements: basis monomials with at most `max_count` generator factors
/// (free models) or the whole basis (finite models).
std::vector<Element> monomial_window(const ModelPtr& model, int max_count);

/// The three equivalent derivation criteria: [f,mu_1] = 0, [f,mu_n] = 0
/// for 1 <= n <= cap, and the Leibniz rule, plus a check that they agree.
Certificate is_derivation(const LinearOperator& f, int cap = 3, int window = 2);

struct QuasiBVReport {
    bool order_two = false;
    bool unit_killed = false;
    bool seven_terms = false;
    bool poisson_identity = false;
    bool mu_identity = false;
    Certificate certificate;

    bool condition1() const { return order_two && unit_killed; }
    bool quasi_bv() const { return condition1() || seven_terms || poisson_identity || mu_identity; }
    bool consistent() const {
        return condition1() == seven_terms && seven_terms == poisson_identity && poisson_identity == mu_identity;
    }
};

/// The four conditions of the second-order criterion, each evaluated by its
/// own code path:
///   (1) f in Diff_2 and f(1) = 0
///   (2) the seven-terms identity
///   (3) Phi(a,b) = f(ab) - f(a)b - (-1)^{af} a f(b) satisfies the Poisson identity
///   (4) [f,mu_2] = [[f,mu_1],mu_1] in D(A)
/// (2)-(4) run over ordered monomial triples (1 included) with at most
/// max(order, 3) generator factors in total; for a NormalForm operator this
/// window decides the identities (they only see the coefficients of
/// D^K with |K| = 0 or |K| >= 3). Matrix operators use all basis triples,
/// opaque ones the window of `window` factors.
QuasiBVReport quasi_bv_report(const LinearOperator& f, int window = 3);

}  // namespace koszul
