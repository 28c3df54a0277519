#pragma once

#include "koszul/core/certificate.hpp"
#include "koszul/deformation/dgla.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace koszul {

/// Q[t]/(t^m), m >= 2; the maximal ideal (t) is nilpotent.
struct ArtinianBase {
    int order = 2;
    explicit ArtinianBase(int m);
};

/// Element of L (x) Q[t]/(t^m): coefficient vectors per power of t,
/// coeffs[0] being the constant term.
struct Series {
    std::vector<Vec> coeffs;

    static Series zero(const FiniteDGLA& L, const ArtinianBase& base);
    /// t^power * v.
    static Series monomial(const FiniteDGLA& L, const ArtinianBase& base, int power, const Vec& v);

    int order() const { return static_cast<int>(coeffs.size()); }
    bool is_zero() const;
    bool in_maximal_ideal() const { return coeffs.empty() || koszul::is_zero(coeffs[0]); }
    /// Every nonzero coefficient has degree p.
    bool homogeneous(const FiniteDGLA& L, int p) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Scalar& c, const Series& a);
    friend bool operator==(const Series&, const Series&) = default;
};

Series apply_d(const FiniteDGLA& L, const Series& a);
/// Truncated product: [a,b]_n = sum_{i+j=n} [a_i, b_j].
Series bracket(const FiniteDGLA& L, const Series& a, const Series& b);
std::string format(const FiniteDGLA& L, const Series& a);

/// dx + 1/2 [x,x]. Throws std::invalid_argument unless x is a degree-1
/// element of L (x) (t).
Series mc_residual(const FiniteDGLA& L, const Series& x);

/// e^lambda * x = x + sum_n ad_lambda^n/(n+1)! ([lambda,x] - d lambda),
/// lambda in L^0 (x) (t).
Series gauge_act(const FiniteDGLA& L, const Series& lambda, const Series& x);

/// Baker-Campbell-Hausdorff log(e^a e^b) for a, b in L^0 (x) (t), exact in
/// the truncation (terms of bracket length >= m vanish).
Series bch(const FiniteDGLA& L, const Series& a, const Series& b);

struct ObstructionClass {
    /// Power of t at which no lift exists.
    int order = 0;
    /// Closed representative: the order-`order` part of 1/2[x,x] for the
    /// partial lift.
    Vec representative;
    /// Coordinates of its class in cohomology_basis(L, 2).
    Vec cohomology_class;
    /// MC to order `order - 1`.
    Series partial;
};

struct LiftResult {
    std::variant<Series, ObstructionClass> outcome;
    bool lifted() const { return std::holds_alternative<Series>(outcome); }
    const Series& mc() const { return std::get<Series>(outcome); }
    const ObstructionClass& obstruction() const { return std::get<ObstructionClass>(outcome); }
};

/// Order-by-order lifting of t*x1 modulo t^{target_order+1}. At order n the
/// equation d x_n = -o_n is solved exactly; if o_n is not exact, x_{n-1} may
/// be corrected by a cocycle c (solving d y = -(o_n + [x_1,c]) jointly).
/// When that fails too, the ObstructionClass for the uncorrected sequence is
/// returned. Throws std::invalid_argument for a non-closed or non-degree-1 x1,
/// or target_order < 1.
LiftResult lift_mc(const FiniteDGLA& L, const Vec& x1, int target_order);

/// DGLA morphism L -> M given by its matrix (rows indexed by M's basis).
struct DGLAMorphism {
    DGLAPtr source, target;
    Matrix matrix;

    Vec operator()(const Vec& a) const { return matrix.apply(a); }
    /// Throws std::invalid_argument unless phi preserves degrees and commutes
    /// with d and the bracket on basis elements.
    void validate() const;
};

/// H^2(phi) applied to the class of obs.representative, which must vanish.
/// `target_unobstructed` declares that Def_M is unobstructed; an abelian M is
/// accepted without it, anything else undeclared is rejected.
Certificate obstruction_kernel_check(const DGLAMorphism& phi, const ObstructionClass& obs,
                                     bool target_unobstructed = false);

}  // namespace koszul
