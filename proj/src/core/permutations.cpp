#include "koszul/core/permutations.hpp"

#include <functional>
#include <stdexcept>

namespace koszul {

int koszul_sign_unchecked(std::span<const int> perm, std::span<const int> parities) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && (parities[perm[i]] & parities[perm[j]] & 1)) sign = -sign;
    return sign;
}

int koszul_sign(std::span<const int> perm, std::span<const int> degrees) {
    const std::size_t n = perm.size();
    if (degrees.size() != n) throw std::invalid_argument("koszul_sign: length mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p])
            throw std::invalid_argument("koszul_sign: not a permutation");
        seen[p] = true;
    }
    std::vector<int> parities(n);
    for (std::size_t i = 0; i < n; ++i) parities[i] = ((degrees[i] % 2) + 2) % 2;
    return koszul_sign_unchecked(perm, parities);
}

std::vector<std::vector<int>> unshuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("unshuffles: negative block size");
    const int n = p + q;
    std::vector<std::vector<int>> out;
    std::vector<int> first;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(first.size()) == p) {
            std::vector<int> perm = first;
            std::vector<bool> used(n, false);
            for (int i : first) used[i] = true;
            for (int i = 0; i < n; ++i)
                if (!used[i]) perm.push_back(i);
            out.push_back(std::move(perm));
            return;
        }
        const int remaining = p - static_cast<int>(first.size());
        for (int i = next; i <= n - remaining; ++i) {
            first.push_back(i);
            rec(i + 1);
            first.pop_back();
        }
    };
    rec(0);
    return out;
}

void for_each_multiset(std::size_t n, std::size_t k,
                       const std::function<void(std::span<const std::size_t>)>& visit) {
    std::vector<std::size_t> idx(k, 0);
    if (k == 0) {
        visit(idx);
        return;
    }
    if (n == 0) return;
    while (true) {
        visit(idx);
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - 1) --pos;
        if (pos == 0) return;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[pos - 1];
    }
}

void for_each_tuple(std::size_t n, std::size_t k,
                    const std::function<void(std::span<const std::size_t>)>& visit) {
    std::vector<std::size_t> idx(k, 0);
    if (k == 0) {
        visit(idx);
        return;
    }
    if (n == 0) return;
    while (true) {
        visit(idx);
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - 1) idx[--pos] = 0;
        if (pos == 0) return;
        ++idx[pos - 1];
    }
}

}  // namespace koszul
