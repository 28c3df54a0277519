#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace koszul {

/// Sign picked up when the word (s_0, ..., s_{n-1}) with the given degrees
/// is rearranged into (s_{perm[0]}, ..., s_{perm[n-1]}) by the graded
/// commutation rule: every inverted pair of odd symbols contributes -1.
/// Throws std::invalid_argument if perm is not a bijection of {0..n-1} or
/// the lengths differ.
int koszul_sign(std::span<const int> perm, std::span<const int> degrees);

/// Same as koszul_sign but takes parities (0/1) and skips validation.
int koszul_sign_unchecked(std::span<const int> perm, std::span<const int> parities);

/// All (p,q)-unshuffles of {0..p+q-1}: permutations whose first p and last q
/// entries are each increasing. Ordered lexicographically by the first block.
/// There are binomial(p+q, p) of them.
std::vector<std::vector<int>> unshuffles(int p, int q);

/// Visits every non-decreasing index sequence of length k over {0..n-1}.
void for_each_multiset(std::size_t n, std::size_t k,
                       const std::function<void(std::span<const std::size_t>)>& visit);

/// Visits every index sequence of length k over {0..n-1}.
void for_each_tuple(std::size_t n, std::size_t k,
                    const std::function<void(std::span<const std::size_t>)>& visit);

}  // namespace koszul
