#pragma once

// Test-only reference computations. Everything here is deliberately
// independent of the series machinery it is used to check: determinants by
// the Leibniz permutation sum, characteristic polynomials by expanding
// det(tI - A) with polynomial entries, and inverse-series coefficients by
// enumerating words of the geometric expansion.

#include <algorithm>
#include <numeric>
#include <vector>

#include "hasse/matrix.hpp"
#include "hasse/multi_index.hpp"
#include "hasse/traces.hpp"

namespace hasse::testing {

template <class K>
K leibniz_determinant(const Matrix<K>& m) {
    const int n = m.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    K total(0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        K prod(1);
        for (int i = 0; i < n; ++i) prod *= m.at(i, perm[i]);
        if (inversions % 2 != 0) prod = -prod;
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/**
 * Coefficient of z^i in 1 + sum_{d>=1} (phi_1 z_1 + ... + phi_m z_m)^d,
 * computed by enumerating every word whose letter counts match i and
 * summing the left-to-right matrix products.
 */
template <class K>
Matrix<K> geometric_coefficient(const EndoTuple<K>& phi, const MultiIndex& i) {
    const int n = tuple_dimension(phi);
    if (i.is_zero()) return Matrix<K>::identity(n);
    std::vector<int> word;
    for (int k = 0; k < i.vars(); ++k)
        for (int c = 0; c < i[k]; ++c) word.push_back(k);
    std::sort(word.begin(), word.end());
    Matrix<K> total(n);
    do {
        Matrix<K> prod = Matrix<K>::identity(n);
        for (int k : word) prod = prod * phi[k];
        total += prod;
    } while (std::next_permutation(word.begin(), word.end()));
    return total;
}

/**
 * (e_1, ..., e_n) read off det(tI - A) = t^n - e_1 t^{n-1} + ... + (-1)^n e_n,
 * expanded over univariate polynomials by the permutation sum.
 */
template <class K>
std::vector<K> charpoly_invariants_by_expansion(const Matrix<K>& a) {
    const int n = a.size();
    using Poly = std::vector<K>;  // coefficient of t^d at position d
    const auto mul = [](const Poly& p, const Poly& q) {
        Poly r(p.size() + q.size() - 1, K(0));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
        return r;
    };

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Poly det(static_cast<std::size_t>(n) + 1, K(0));
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Poly prod{K(1)};
        for (int i = 0; i < n; ++i) {
            Poly entry;
            if (perm[i] == i)
                entry = {-a.at(i, i), K(1)};
            else
                entry = {-a.at(i, perm[i])};
            prod = mul(prod, entry);
        }
        for (std::size_t d = 0; d < prod.size(); ++d) {
            if (inversions % 2 != 0) prod[d] = -prod[d];
            det[d] += prod[d];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<K> e;
    e.reserve(n);
    for (int k = 1; k <= n; ++k) {
        K v = det[static_cast<std::size_t>(n - k)];
        if (k % 2 != 0) v = -v;
        e.push_back(v);
    }
    return e;
}

}  // namespace hasse::testing
