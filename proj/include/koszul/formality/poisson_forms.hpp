#pragma once

#include "koszul/formality/koszul_structure.hpp"
#include "koszul/polyvector/derham.hpp"

#include <stdexcept>

namespace koszul {

/// [a,b]_pi = (-1)^p (l_pi(a /\ b) - l_pi(a) /\ b) - a /\ l_pi(b), for a of
/// degree p. Throws std::invalid_argument for inhomogeneous a.
Element koszul_bracket(const DeRham& m, const Polyvector& pi, const Element& alpha, const Element& beta);

/// The structure with i = i_pi (degree -2, so k = 1).
KoszulStructure poisson_structure(const DeRham& m, const Polyvector& pi, int window = 2);

struct NotClosedError : std::invalid_argument {
    NotClosedError(const std::string& what, Element r) : std::invalid_argument(what), residual(std::move(r)) {}
    /// d of the offending argument.
    Element residual;
};

/// For closed a, b: gamma = (-1)^{p+1} R(a,b), so that d gamma = [a,b]_Q.
/// Throws NotClosedError when da or db is nonzero; the identity d gamma =
/// [a,b] is re-checked and a failure raises std::logic_error.
Element closed_forms_primitive(const KoszulStructure& s, const Element& alpha, const Element& beta);

/// Basis 1-forms with coefficients of degree <= poly_degree.
std::vector<Element> one_form_window(const DeRham& m, int poly_degree);

/// On all ordered pairs of the given 1-forms:
///   (a) both Magri expansions agree with the defining bracket
///   (b) i_{pi#(a)}(db) = i_pi(a /\ db) - a /\ i_pi(db)
///   (c) pi#[a,b]_pi = [pi#a, pi#b] (only when pi is Poisson; otherwise
///       recorded as skipped in the window)
Certificate magri_anchor_suite(const DeRham& m, const Polyvector& pi, const std::vector<Element>& one_forms);

/// bv_check for i = i_pi, plus l_pi^2 = 1/2 l_[pi,pi] and agreement of the
/// verdict with is_poisson.
Certificate poisson_bv_check(const DeRham& m, const Polyvector& pi, const std::vector<Element>& letters);

/// The Koszul bracket three ways on every ordered pair of letters: the
/// defining formula through l_pi, the decalage of Q and the [,]_l formula
/// through s.l(). Then the Gerstenhaber suite on the letters and the Magri
/// suite on the 1-forms among them.
Certificate koszul_suite(const DeRham& m, const Polyvector& pi, const KoszulStructure& s,
                         const std::vector<Element>& letters);

}  // namespace koszul
