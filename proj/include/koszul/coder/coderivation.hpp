#pragma once

#include "koszul/coder/multiop.hpp"
#include "koszul/coder/sym_tensor.hpp"
#include "koszul/core/certificate.hpp"

#include <vector>

namespace koszul {

/// mu_n(a_0, ..., a_n) = a_0 a_1 ... a_n, of V-degree 2kn, in D_n(V).
MultiOp make_mu(int n, const ShiftedSpace& space);

/// f . g (a_0..a_{n+m}) = sum over (m+1,n)-unshuffles s of
/// eps(s) f(g(a_s(0..m)), a_s(m+1), ..., a_s(n+m)).
/// Not associative. Operands on different spaces are rejected.
MultiOp pre_lie(const MultiOp& f, const MultiOp& g);

/// [f,g] = f.g - (-1)^{|f||g|} g.f, the bracket of D(V).
MultiOp nr_bracket(const MultiOp& f, const MultiOp& g);

/// Bracket of series, dropping components of arity above `arity_cap`.
OpSeries nr_bracket(const OpSeries& a, const OpSeries& b, int arity_cap);

/// The coderivation of S(V) determined by g, applied to t.
SymTensor extend_coderivation(const MultiOp& g, const SymTensor& t);
SymTensor extend_coderivation(const OpSeries& g, const SymTensor& t);

/// e^R t for a degree-0 R in D_{>0}(V); the series terminates because each
/// application of R shortens words. Throws std::invalid_argument for R of
/// nonzero degree or with a D_0 component.
SymTensor exp_apply(const OpSeries& R, const SymTensor& t);
SymTensor exp_apply(const MultiOp& R, const SymTensor& t);

/// e^R X e^{-R} t, with X acting as a coderivation.
SymTensor conjugate(const OpSeries& R, const OpSeries& X, const SymTensor& t);

/// Gauge action e^R * xi = xi + sum_n (ad_R)^n/(n+1)! ([R,xi] + [R,d]),
/// keeping components of arity <= arity_cap. Exact below the cap because
/// ad_R raises arity. arity_cap must be at least 2.
OpSeries gauge(const OpSeries& R, const OpSeries& xi, const MultiOp& d, int arity_cap);

/// Checks e^R (d+xi) e^{-R} = d + e^R*xi on every word of length
/// <= arity_cap built from the letters.
Check verify_gauge_conjugation(const OpSeries& R, const OpSeries& xi, const MultiOp& d, int arity_cap,
                               const std::vector<Element>& letters);

/// Verifies [d+xi, d+xi] = 0 in each D_n, n < cap, on all multisets of
/// letters of size n+1. Failures carry the first offending tuple.
Certificate check_linfty(const OpSeries& xi, const MultiOp& d, int cap, const std::vector<Element>& letters);

/// Compares two maps of equal arity on all multisets of letters.
Check compare_on_letters(const std::string& name, const MultiOp& lhs, const MultiOp& rhs,
                         const std::vector<Element>& letters);

/// Checks that a map vanishes on all multisets of letters.
Check vanishes_on_letters(const std::string& name, const MultiOp& op, const std::vector<Element>& letters);

/// All words of length 1..max_length over the letters (as multisets).
std::vector<SymTensor> words_up_to(ModelPtr model, const std::vector<Element>& letters, std::size_t max_length);

}  // namespace koszul
