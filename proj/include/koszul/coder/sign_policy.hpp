#pragma once

// Every degree shift and decalage sign used by the coderivation calculus and
// the Koszul brackets is defined here and nowhere else.
//
//   A          the graded algebra, degrees p = deg_A
//   V = A[2k]  V^i = A^{i+2k}; MultiOps in D(V) are graded on V
//   L = A[2k-1] the DGLA carrying the bracket [a,b]_Q = (-1)^p Q(a,b)
//
// Since 2k is even, parities in A and in V agree, so all Koszul signs of
// words in S(V) may be computed from A-degrees.

namespace koszul::sign_policy {

constexpr int parity(int degree) { return ((degree % 2) + 2) % 2; }
constexpr int sign(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

/// Degree in V = A[2k] of an element of A-degree p.
constexpr int v_degree(int p, int k) { return p - 2 * k; }

/// Degree in the DGLA A[2k-1] of an element of A-degree p.
constexpr int dgla_degree(int p, int k) { return p - 2 * k + 1; }

/// V-degree of an arity-r multilinear map A^{(x)r} -> A of A-degree e.
constexpr int multiop_v_degree(int a_degree, int arity, int k) { return a_degree + 2 * k * (arity - 1); }

/// A-degree of an arity-r map of V-degree e on A[2k].
constexpr int multiop_a_degree(int v_degree, int arity, int k) { return v_degree - 2 * k * (arity - 1); }

/// Sign relating the DGLA bracket to Q: [a,b]_Q = decalage_sign(p) * Q(a,b)
/// for a of A-degree p.
constexpr int decalage_sign(int p) { return sign(p); }

}  // namespace koszul::sign_policy
