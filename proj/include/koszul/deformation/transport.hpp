#pragma once

#include "koszul/deformation/mc.hpp"
#include "koszul/formality/koszul_structure.hpp"

#include <vector>

namespace koszul {

/// Finite DGLA (B[2k-1], d, [,]_Q) on the span B of the basis monomials of A
/// with at most `max_count` generator factors, when that span is stable
/// under d and Q. Basis element i is the monomial basis[i], in DGLA degree
/// p - 2k + 1.
struct KoszulSlice {
    DGLAPtr dgla;
    std::vector<Monomial> basis;
    ModelPtr model;

    Vec to_vec(const Element& e) const;
    Element to_element(const Vec& v) const;
};

/// Throws std::invalid_argument when the span is not stable, or when the
/// restricted bracket fails the DGLA axioms.
KoszulSlice koszul_slice(const KoszulStructure& s, int max_count);

/// sum_i t^i x_i with x_i in A; terms[0] is the constant term.
using ElementSeries = std::vector<Element>;

/// dx + 1/2 [x,x]_Q, truncated at the series length.
ElementSeries q_mc_residual(const KoszulStructure& s, const ElementSeries& x);

/// Pushforward of an abelian MC element along e^R (or e^{-R} with
/// inverse = true): y = sum_n 1/n! (e^R)_n(x, ..., x), computed with words
/// over the t-coefficients of x. Requires a passing formality certificate
/// and x with zero constant term, closed coefficients of A-degree 2k (or
/// MC for [,]_Q when inverse is set); throws std::invalid_argument otherwise.
ElementSeries transport_mc(const KoszulStructure& s, const Certificate& witness, const ElementSeries& x,
                           bool inverse = false);

}  // namespace koszul
