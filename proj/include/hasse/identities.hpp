#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "hasse/traces.hpp"

namespace hasse {

/**
 * Outcome of evaluating one identity: the residual (a matrix; scalar
 * identities use 1x1), an exact zero flag, and float-mode diagnostics
 * (largest residual entry and the largest intermediate term magnitude the
 * evaluation saw, for relative-tolerance decisions).
 */
template <class K>
struct IdentityReport {
    std::string identity;
    int n = 0;
    Matrix<K> residual;
    bool is_zero = false;
    double max_abs = 0.0;
    double scale = 1.0;

    IdentityReport(std::string name, Matrix<K> res)
        : identity(std::move(name)), n(res.size()), residual(std::move(res)) {
        is_zero = residual.is_zero();
        if constexpr (std::is_floating_point_v<K>) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(residual.at(i, j)));
        }
    }

    /// Raises scale to cover the magnitude of one intermediate term.
    void observe_term(const Matrix<K>& term) {
        if constexpr (std::is_floating_point_v<K>) {
            for (int i = 0; i < term.size(); ++i)
                for (int j = 0; j < term.size(); ++j) scale = std::max(scale, std::abs(term.at(i, j)));
        } else {
            (void)term;
        }
    }
};

namespace detail {
template <class K>
Matrix<K> scalar_residual(const K& value) {
    Matrix<K> m(1);
    m.at(0, 0) = value;
    return m;
}

template <class K>
void grow_scale(double& scale, const Matrix<K>& term) {
    if constexpr (std::is_floating_point_v<K>) {
        for (int i = 0; i < term.size(); ++i)
            for (int j = 0; j < term.size(); ++j) scale = std::max(scale, std::abs(term.at(i, j)));
    } else {
        (void)scale;
        (void)term;
    }
}
}  // namespace detail

/**
 * Literal evaluation of the vanishing identity for an n-tuple: over k from
 * 0 to n and every permutation s of the slots,
 *   (-1)^k / k! * tau at the square-free index {s(1),...,s(k)} times the
 *   composition phi_{s(k+1)} ... phi_{s(n)},
 * summed into one n x n residual, expected zero. All n!(n+1) terms are
 * evaluated as written; no k!-deduplication.
 */
template <class K>
IdentityReport<K> generalized_ch_residual(const EndoTuple<K>& phi, const TraceTensor<K>& tau) {
    const int n = tuple_dimension(phi);
    if (static_cast<int>(phi.size()) != n)
        throw std::invalid_argument("generalized_ch_residual: tuple length must equal dimension");
    if (tau.vars() != n || tau.dimension() != n)
        throw std::invalid_argument("generalized_ch_residual: tensor/tuple mismatch");

    Matrix<K> residual(n);
    double scale = 1.0;
    for (int k = 0; k <= n; ++k) {
        K coeff = inverse_factorial<K>(k);
        if (k % 2 != 0) coeff = -coeff;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> exps(n, 0);
            for (int t = 0; t < k; ++t) exps[perm[t]] = 1;
            const K tau_value = tau.entry(MultiIndex(exps));
            if (hasse::is_zero(tau_value)) continue;
            Matrix<K> prod = Matrix<K>::identity(n);
            for (int t = k; t < n; ++t) prod = prod * phi[perm[t]];
            Matrix<K> term = prod.scaled(coeff * tau_value);
            detail::grow_scale(scale, term);
            residual += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    IdentityReport<K> report("thm48", residual);
    report.scale = scale;
    return report;
}

/**
 * Partial determinant of Notation-style column replacement: column j of the
 * identity is swapped for the j-th column of A_j exactly when i_j = 1.
 */
template <class K>
K delta_det(const EndoTuple<K>& phi, const MultiIndex& i) {
    const int n = tuple_dimension(phi);
    if (i.vars() != static_cast<int>(phi.size()))
        throw std::invalid_argument("delta_det: variable count mismatch");
    if (!i.is_square_free()) throw std::invalid_argument("delta_det: index must be square-free");
    if (i.vars() > n) throw std::invalid_argument("delta_det: more slots than columns");
    Matrix<K> m = Matrix<K>::identity(n);
    for (int j = 0; j < i.vars(); ++j)
        if (i[j] == 1) m.set_col(j, phi[j].col(j));
    return m.determinant();
}

/// A*B = AB - a11 B - b22 A + det(C1(A), C2(B)) I for 2x2 inputs.
template <class K>
Matrix<K> star2(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.size() != 2 || b.size() != 2) throw std::invalid_argument("star2: inputs must be 2x2");
    const EndoTuple<K> pair{a, b};
    Matrix<K> r = a * b;
    r -= b.scaled(a.at(0, 0));
    r -= a.scaled(b.at(1, 1));
    r += Matrix<K>::identity(2).scaled(delta_det(pair, MultiIndex({1, 1})));
    return r;
}

/**
 * Tri-linear star product of 3x3 matrices, with the partial determinants
 * of the slot tuple (A,B,C) as coefficients and the CA ordering in the
 * middle quadratic term.
 */
template <class K>
Matrix<K> star3(const Matrix<K>& a, const Matrix<K>& b, const Matrix<K>& c) {
    if (a.size() != 3 || b.size() != 3 || c.size() != 3)
        throw std::invalid_argument("star3: inputs must be 3x3");
    const EndoTuple<K> t{a, b, c};
    Matrix<K> r = a * b * c;
    r -= (b * c).scaled(delta_det(t, MultiIndex({1, 0, 0})));
    r -= (c * a).scaled(delta_det(t, MultiIndex({0, 1, 0})));
    r -= (a * b).scaled(delta_det(t, MultiIndex({0, 0, 1})));
    r += c.scaled(delta_det(t, MultiIndex({1, 1, 0})));
    r += a.scaled(delta_det(t, MultiIndex({0, 1, 1})));
    r += b.scaled(delta_det(t, MultiIndex({1, 0, 1})));
    r -= Matrix<K>::identity(3).scaled(delta_det(t, MultiIndex({1, 1, 1})));
    return r;
}

/**
 * Sum of the star product over all six slot orders; zero by the theorem.
 * The fault knob offsets the delta_(1,1,1) coefficient of the first term
 * and exists so negative-control tests can drive the nonzero path.
 */
template <class K>
IdentityReport<K> star3_symmetrized_residual(const Matrix<K>& a, const Matrix<K>& b,
                                             const Matrix<K>& c, bool inject_fault = false) {
    Matrix<K> sum = star3(a, b, c) + star3(b, a, c) + star3(c, a, b) + star3(b, c, a) +
                    star3(a, c, b) + star3(c, b, a);
    if (inject_fault) sum += Matrix<K>::identity(3);
    IdentityReport<K> report("star3", sum);
    report.observe_term(a * b * c);
    return report;
}

template <class K>
IdentityReport<K> star2_skew_residual(const Matrix<K>& a, const Matrix<K>& b) {
    IdentityReport<K> report("star2", star2(a, b) + star2(b, a));
    report.observe_term(a * b);
    return report;
}

/**
 * The degree-(2,1) vanishing combination for a pair (A,B) on a 3-space:
 *   (A^2 B + A B A + B A^2)
 *   - tau_(1,0) (AB + BA) - tau_(0,1) A^2
 *   + tau_(2,0) B + tau_(1,1) A - tau_(2,1) I,
 * with tau the 2-variable trace tensor of the pair.
 */
template <class K>
IdentityReport<K> eq17_residual(const Matrix<K>& a, const Matrix<K>& b, const TraceTensor<K>& tau) {
    if (a.size() != 3 || b.size() != 3) throw std::invalid_argument("eq17_residual: inputs must be 3x3");
    if (tau.vars() != 2 || tau.dimension() != 3)
        throw std::invalid_argument("eq17_residual: need the 2-variable tensor of the pair");
    Matrix<K> r = a * a * b + a * b * a + b * a * a;
    r -= (a * b + b * a).scaled(tau.entry(MultiIndex({1, 0})));
    r -= (a * a).scaled(tau.entry(MultiIndex({0, 1})));
    r += b.scaled(tau.entry(MultiIndex({2, 0})));
    r += a.scaled(tau.entry(MultiIndex({1, 1})));
    r -= Matrix<K>::identity(3).scaled(tau.entry(MultiIndex({2, 1})));
    IdentityReport<K> report("eq17", r);
    report.observe_term(a * a * b);
    return report;
}

template <class K>
IdentityReport<K> eq17_residual(const Matrix<K>& a, const Matrix<K>& b) {
    return eq17_residual(a, b, trace_tensor_via_hs(EndoTuple<K>{a, b}));
}

/// tr(A^2) + 2 det(A) - tr(A)^2, zero for every 2x2 matrix.
template <class K>
IdentityReport<K> tr_square_identity(const Matrix<K>& a) {
    if (a.size() != 2) throw std::invalid_argument("tr_square_identity: input must be 2x2");
    const K tr_sq = (a * a).trace();
    const K tr = a.trace();
    IdentityReport<K> report("trsq", detail::scalar_residual(tr_sq + K(2) * a.determinant() - tr * tr));
    if constexpr (std::is_floating_point_v<K>) {
        report.scale = std::max({1.0, std::abs(tr_sq), std::abs(tr * tr)});
    }
    return report;
}

/**
 * Compares the trace tensors of a tuple and its slotwise conjugate by P;
 * the 1x1 residual is the sum of squared entry differences, zero exactly
 * when the tensors agree.
 */
template <class K>
IdentityReport<K> conjugacy_invariance_check(const EndoTuple<K>& phi, const Matrix<K>& p) {
    const int n = tuple_dimension(phi);
    if (p.size() != n) throw std::invalid_argument("conjugacy_invariance_check: conjugator size mismatch");
    const Matrix<K> p_inv = p.inverse();  // throws std::domain_error when singular
    EndoTuple<K> conjugated;
    conjugated.reserve(phi.size());
    for (const auto& m : phi) conjugated.push_back(p * m * p_inv);
    const TraceTensor<K> t1 = trace_tensor_via_hs(phi);
    const TraceTensor<K> t2 = trace_tensor_via_hs(conjugated);
    K sum(0);
    double worst = 0.0;
    for (const auto& i : indices_up_to_degree(static_cast<int>(phi.size()), n)) {
        const K d = t1.entry(i) - t2.entry(i);
        sum += d * d;
        if constexpr (std::is_floating_point_v<K>) worst = std::max(worst, std::abs(d));
    }
    IdentityReport<K> report("conjugacy", detail::scalar_residual(sum));
    if constexpr (std::is_floating_point_v<K>) {
        report.max_abs = worst;
        for (const auto& [i, v] : t1.entries()) report.scale = std::max(report.scale, std::abs(v));
    }
    return report;
}

/// A^n - e1 A^{n-1} + ... + (-1)^n e_n I, the classical vanishing combination.
template <class K>
IdentityReport<K> classical_ch_residual(const Matrix<K>& a) {
    const int n = a.size();
    const std::vector<K> e = classical_invariants(a);
    Matrix<K> r = a.pow(n);
    double scale = 1.0;
    detail::grow_scale(scale, r);
    for (int k = 1; k <= n; ++k) {
        Matrix<K> term = a.pow(n - k).scaled(e[k - 1]);
        detail::grow_scale(scale, term);
        if (k % 2 != 0)
            r -= term;
        else
            r += term;
    }
    IdentityReport<K> report("classical-ch", r);
    report.scale = scale;
    return report;
}

}  // namespace hasse
