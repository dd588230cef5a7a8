#pragma once

#include <cstdint>
#include <vector>

#include "nambu/polynomial.hpp"

namespace nambu {

/// Monomials with total degree in [min_deg, max_deg] on dim variables, in the
/// graded order used everywhere for enumeration and witness reporting:
/// degree ascending, then the non-decreasing index tuple lexicographically
/// (1, x1, x2, x3, x1^2, x1*x2, x1*x3, x2^2, ...).
inline std::vector<Monomial> monomial_basis(int dim, int min_deg, int max_deg) {
    std::vector<Monomial> out;
    std::vector<int> stack;
    auto emit = [&] {
        Monomial m;
        for (int i : stack) m = m.mul(Monomial::var(i));
        out.push_back(m);
    };
    auto rec = [&](auto&& self, int remaining, int lo) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        for (int i = lo; i <= dim; ++i) {
            stack.push_back(i);
            self(self, remaining - 1, i);
            stack.pop_back();
        }
    };
    for (int deg = min_deg; deg <= max_deg; ++deg) rec(rec, deg, 1);
    return out;
}

/// All strictly increasing k-tuples over {0, .., n-1}, lexicographic.
inline std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace nambu
