#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "hasse/hs_series.hpp"

namespace hasse {

/// Ordered tuple of endomorphisms of K^n, one square matrix per slot.
template <class K>
using EndoTuple = std::vector<Matrix<K>>;

template <class K>
int tuple_dimension(const EndoTuple<K>& phi) {
    if (phi.empty()) throw std::invalid_argument("EndoTuple: empty tuple");
    const int n = phi.front().size();
    for (const auto& m : phi)
        if (m.size() != n) throw std::invalid_argument("EndoTuple: mixed matrix sizes");
    return n;
}

/**
 * Trace tensor of a tuple: multi-index -> scalar, total degree at most n.
 * The zero index always carries 1; entries above degree n vanish and are
 * never stored, and zero entries within range are pruned (rendering layers
 * re-enumerate the full index range when a dense listing is wanted).
 */
template <class K>
class TraceTensor {
public:
    TraceTensor(int n, int vars) : n_(n), vars_(vars) {
        if (n < 1 || vars < 1) throw std::invalid_argument("TraceTensor: bad shape");
    }

    int dimension() const { return n_; }
    int vars() const { return vars_; }
    const std::map<MultiIndex, K>& entries() const { return entries_; }

    K entry(const MultiIndex& i) const {
        if (i.vars() != vars_) throw std::invalid_argument("TraceTensor: variable count mismatch");
        auto it = entries_.find(i);
        return it == entries_.end() ? K(0) : it->second;
    }

    void set_entry(const MultiIndex& i, K value) {
        if (i.vars() != vars_) throw std::invalid_argument("TraceTensor: variable count mismatch");
        if (i.degree() > n_) throw std::invalid_argument("TraceTensor: index beyond degree bound");
        if (hasse::is_zero(value))
            entries_.erase(i);
        else
            entries_.insert_or_assign(i, std::move(value));
    }

    bool operator==(const TraceTensor& o) const {
        return n_ == o.n_ && vars_ == o.vars_ && entries_ == o.entries_;
    }
    bool operator!=(const TraceTensor& o) const { return !(*this == o); }

private:
    int n_;
    int vars_;
    std::map<MultiIndex, K> entries_;
};

/// Degree-wise action 1 - (phi_1 z_1 + ... + phi_m z_m) on V.
template <class K>
RestrictionSeries<K> tuple_restriction(const EndoTuple<K>& phi) {
    const int n = tuple_dimension(phi);
    const int m = static_cast<int>(phi.size());
    RestrictionSeries<K> f;
    f.emplace(MultiIndex::zero(m), Matrix<K>::identity(n));
    for (int k = 0; k < m; ++k) f.emplace(MultiIndex::unit(m, k), -phi[k]);
    return f;
}

/// The multiplicative series extension of 1 - sum(phi_k z_k) to the whole
/// algebra. Truncation defaults to n: on an n-dimensional space nothing
/// survives past total degree n.
template <class K>
OperatorSeries<K> tuple_derivation(const EndoTuple<K>& phi, int trunc = -1) {
    const int n = tuple_dimension(phi);
    if (trunc < 0) trunc = n;
    return extend_from_v(tuple_restriction(phi), n, static_cast<int>(phi.size()), trunc);
}

/**
 * Trace tensor read off the top exterior power: the series of the tuple is
 * applied to e_1 ^ ... ^ e_n and each coefficient's top-form component is
 * extracted. The tensor entry carries the alternating-sign normalization
 * (-1)^|i| relative to the raw series coefficient, so that degree-1 entries
 * are ordinary traces and n e_k entries are determinants.
 */
template <class K>
TraceTensor<K> trace_tensor_via_hs(const EndoTuple<K>& phi) {
    const int n = tuple_dimension(phi);
    const int m = static_cast<int>(phi.size());
    TraceTensor<K> tau(n, m);
    const ElementSeries<K> top =
        extend_apply(tuple_restriction(phi), n, m, n, ExteriorElement<K>::top_blade(n));
    for (const auto& [i, elt] : top.coefficients()) {
        K value = top_form_coefficient(elt);
        if (i.degree() % 2 != 0) value = -value;
        tau.set_entry(i, std::move(value));
    }
    return tau;
}

/**
 * Independent determinant-sum evaluation of one trace entry: sum over all
 * labelings f of the n columns with exactly i_k columns labeled k (label 0
 * keeps the identity column) of det(M_f), where a column labeled k is the
 * corresponding column of phi_k. Indices of degree above n admit no
 * labeling and the sum is exactly zero.
 */
template <class K>
K trace_via_determinant_oracle(const EndoTuple<K>& phi, const MultiIndex& i) {
    const int n = tuple_dimension(phi);
    const int m = static_cast<int>(phi.size());
    if (i.vars() != m) throw std::invalid_argument("trace oracle: variable count mismatch");
    if (i.degree() > n) return K(0);

    std::vector<int> word;
    word.reserve(n);
    for (int z = 0; z < n - i.degree(); ++z) word.push_back(0);
    for (int k = 0; k < m; ++k)
        for (int c = 0; c < i[k]; ++c) word.push_back(k + 1);
    std::sort(word.begin(), word.end());

    K total(0);
    do {
        Matrix<K> mf(n);
        for (int j = 0; j < n; ++j) {
            if (word[j] == 0)
                mf.at(j, j) = K(1);
            else
                mf.set_col(j, phi[word[j] - 1].col(j));
        }
        total += mf.determinant();
    } while (std::next_permutation(word.begin(), word.end()));
    return total;
}

/**
 * Characteristic-polynomial coefficients (e_1, ..., e_n) of one matrix via
 * the univariate specialization: e_1 is the trace, e_n the determinant.
 */
template <class K>
std::vector<K> classical_invariants(const Matrix<K>& a) {
    const int n = a.size();
    RestrictionSeries<K> f;
    f.emplace(MultiIndex::zero(1), Matrix<K>::identity(n));
    f.emplace(MultiIndex::unit(1, 0), -a);
    const ElementSeries<K> top = extend_apply(f, n, 1, n, ExteriorElement<K>::top_blade(n));
    std::vector<K> e;
    e.reserve(n);
    for (int k = 1; k <= n; ++k) {
        K value = top_form_coefficient(top.coefficient(MultiIndex(std::vector<int>{k})));
        if (k % 2 != 0) value = -value;
        e.push_back(std::move(value));
    }
    return e;
}

}  // namespace hasse
