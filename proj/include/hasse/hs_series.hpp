#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hasse/exterior.hpp"
#include "hasse/matrix.hpp"
#include "hasse/multi_index.hpp"

namespace hasse {

/**
 * K-linear endomorphism of the exterior algebra, stored column-sparse on
 * the blade basis: the image of each basis blade, with zero columns absent.
 * Two operators compare equal iff their pruned column maps do.
 */
template <class K>
class LinearOperator {
public:
    explicit LinearOperator(int n) : n_(n) {
        if (n < 1 || n > kMaxExteriorDim)
            throw std::invalid_argument("LinearOperator: dimension out of range [1,16]");
    }

    static LinearOperator identity(int n) {
        LinearOperator op(n);
        for (std::uint32_t m = 0; m < (1u << n); ++m)
            op.cols_.emplace(Blade{m}, ExteriorElement<K>::basis_blade(n, Blade{m}));
        return op;
    }

    int dimension() const { return n_; }
    bool is_zero() const { return cols_.empty(); }
    const std::map<Blade, ExteriorElement<K>>& columns() const { return cols_; }

    bool operator==(const LinearOperator& o) const { return n_ == o.n_ && cols_ == o.cols_; }
    bool operator!=(const LinearOperator& o) const { return !(*this == o); }

    ExteriorElement<K> column(Blade b) const {
        auto it = cols_.find(b);
        return it == cols_.end() ? ExteriorElement<K>(n_) : it->second;
    }

    void set_column(Blade b, ExteriorElement<K> image) {
        if (image.is_zero())
            cols_.erase(b);
        else
            cols_.insert_or_assign(b, std::move(image));
    }

    ExteriorElement<K> apply(const ExteriorElement<K>& u) const {
        if (u.dimension() != n_) throw std::invalid_argument("LinearOperator: dimension mismatch");
        ExteriorElement<K> out(n_);
        for (const auto& [b, c] : u.terms()) {
            auto it = cols_.find(b);
            if (it == cols_.end()) continue;
            for (const auto& [ob, oc] : it->second.terms()) out.add_term(ob, oc * c);
        }
        return out;
    }

    /// this after other.
    LinearOperator compose(const LinearOperator& other) const {
        require_same(other);
        LinearOperator r(n_);
        for (const auto& [b, img] : other.cols_) r.set_column(b, apply(img));
        return r;
    }

    LinearOperator operator+(const LinearOperator& o) const {
        require_same(o);
        LinearOperator r(*this);
        for (const auto& [b, img] : o.cols_) r.set_column(b, r.column(b) + img);
        return r;
    }

    LinearOperator operator-() const {
        LinearOperator r(n_);
        for (const auto& [b, img] : cols_) r.cols_.emplace(b, -img);
        return r;
    }

    LinearOperator operator-(const LinearOperator& o) const { return *this + (-o); }

    LinearOperator scaled(const K& c) const {
        LinearOperator r(n_);
        if (hasse::is_zero(c)) return r;
        for (const auto& [b, img] : cols_) r.set_column(b, img.scaled(c));
        return r;
    }

    /// Every basis blade of grade k maps inside grade k.
    bool is_grade_preserving() const {
        for (const auto& [b, img] : cols_)
            if (!img.is_homogeneous(b.grade())) return false;
        return true;
    }

    /// The grade-1 block as an n x n matrix (only meaningful for
    /// grade-preserving operators; other grades are ignored).
    Matrix<K> restrict_to_v() const {
        Matrix<K> m(n_);
        for (int j = 1; j <= n_; ++j) {
            auto it = cols_.find(Blade::single(j));
            if (it == cols_.end()) continue;
            for (int i = 1; i <= n_; ++i) m.at(i - 1, j - 1) = it->second.coefficient(Blade::single(i));
        }
        return m;
    }

    /// Dense 2^n x 2^n form, blade masks as row/column indices.
    Matrix<K> to_dense() const {
        const int dim = 1 << n_;
        Matrix<K> m(dim);
        for (const auto& [b, img] : cols_)
            for (const auto& [ob, c] : img.terms()) m.at(static_cast<int>(ob.mask), static_cast<int>(b.mask)) = c;
        return m;
    }

    static LinearOperator from_dense(int n, const Matrix<K>& m) {
        if (m.size() != (1 << n)) throw std::invalid_argument("LinearOperator: dense size mismatch");
        LinearOperator op(n);
        for (std::uint32_t j = 0; j < (1u << n); ++j) {
            ExteriorElement<K> img(n);
            for (std::uint32_t i = 0; i < (1u << n); ++i)
                img.add_term(Blade{i}, m.at(static_cast<int>(i), static_cast<int>(j)));
            op.set_column(Blade{j}, std::move(img));
        }
        return op;
    }

    /// Inverse as an endomorphism of the whole exterior algebra.
    LinearOperator inverse() const {
        if (*this == identity(n_)) return *this;
        return from_dense(n_, to_dense().inverse());
    }

private:
    void require_same(const LinearOperator& o) const {
        if (o.n_ != n_) throw std::invalid_argument("LinearOperator: dimension mismatch");
    }

    int n_;
    std::map<Blade, ExteriorElement<K>> cols_;
};

/// Degree-wise action on V: multi-index -> n x n matrix.
template <class K>
using RestrictionSeries = std::map<MultiIndex, Matrix<K>>;

/**
 * Truncated polynomial with exterior-algebra coefficients: the shape of a
 * series applied to one element. Terms above the truncation degree are
 * discarded on entry; zero coefficients are never stored.
 */
template <class K>
class ElementSeries {
public:
    ElementSeries(int n, int vars, int trunc) : n_(n), vars_(vars), trunc_(trunc) {
        if (vars < 1) throw std::invalid_argument("ElementSeries: need at least one variable");
        if (trunc < 0) throw std::invalid_argument("ElementSeries: negative truncation");
    }

    static ElementSeries constant(const ExteriorElement<K>& u, int vars, int trunc) {
        ElementSeries s(u.dimension(), vars, trunc);
        s.add_term(MultiIndex::zero(vars), u);
        return s;
    }

    int dimension() const { return n_; }
    int vars() const { return vars_; }
    int truncation() const { return trunc_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<MultiIndex, ExteriorElement<K>>& coefficients() const { return coeffs_; }

    ExteriorElement<K> coefficient(const MultiIndex& i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? ExteriorElement<K>(n_) : it->second;
    }

    bool operator==(const ElementSeries& o) const {
        return n_ == o.n_ && vars_ == o.vars_ && trunc_ == o.trunc_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const ElementSeries& o) const { return !(*this == o); }

    void add_term(const MultiIndex& i, const ExteriorElement<K>& u) {
        if (i.vars() != vars_) throw std::invalid_argument("ElementSeries: variable count mismatch");
        if (u.dimension() != n_) throw std::invalid_argument("ElementSeries: dimension mismatch");
        if (i.degree() > trunc_ || u.is_zero()) return;
        auto it = coeffs_.find(i);
        if (it == coeffs_.end()) {
            coeffs_.emplace(i, u);
        } else {
            it->second += u;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    ElementSeries operator+(const ElementSeries& o) const {
        require_compatible(o);
        ElementSeries r(*this);
        for (const auto& [i, u] : o.coeffs_) r.add_term(i, u);
        return r;
    }

    ElementSeries operator-() const {
        ElementSeries r(n_, vars_, trunc_);
        for (const auto& [i, u] : coeffs_) r.coeffs_.emplace(i, -u);
        return r;
    }

    ElementSeries operator-(const ElementSeries& o) const { return *this + (-o); }

    /// Cauchy product under the wedge, truncated.
    ElementSeries wedge(const ElementSeries& o) const {
        require_compatible(o);
        ElementSeries r(n_, vars_, trunc_);
        for (const auto& [i, u] : coeffs_) {
            const int di = i.degree();
            for (const auto& [j, v] : o.coeffs_) {
                if (di + j.degree() > trunc_) continue;
                r.add_term(i + j, hasse::wedge(u, v));
            }
        }
        return r;
    }

    ElementSeries wedge_constant(const ExteriorElement<K>& v) const {
        ElementSeries r(n_, vars_, trunc_);
        for (const auto& [i, u] : coeffs_) r.add_term(i, hasse::wedge(u, v));
        return r;
    }

private:
    void require_compatible(const ElementSeries& o) const {
        if (o.n_ != n_ || o.vars_ != vars_ || o.trunc_ != trunc_)
            throw std::invalid_argument("ElementSeries: shape mismatch");
    }

    int n_;
    int vars_;
    int trunc_;
    std::map<MultiIndex, ExteriorElement<K>> coeffs_;
};

/**
 * Truncated operator-valued power series in `vars` formal variables acting
 * on the exterior algebra of an n-dimensional space. Coefficients are
 * stored for total degree <= truncation only, zero operators absent, and
 * iterate in graded-lex order (the inversion recursion depends on it).
 */
template <class K>
class OperatorSeries {
public:
    OperatorSeries(int n, int vars, int trunc) : n_(n), vars_(vars), trunc_(trunc) {
        if (vars < 1) throw std::invalid_argument("OperatorSeries: need at least one variable");
        if (trunc < 0) throw std::invalid_argument("OperatorSeries: negative truncation");
    }

    static OperatorSeries identity(int n, int vars, int trunc) {
        OperatorSeries s(n, vars, trunc);
        s.set_coefficient(MultiIndex::zero(vars), LinearOperator<K>::identity(n));
        return s;
    }

    int dimension() const { return n_; }
    int vars() const { return vars_; }
    int truncation() const { return trunc_; }
    const std::map<MultiIndex, LinearOperator<K>>& coefficients() const { return coeffs_; }

    LinearOperator<K> coefficient(const MultiIndex& i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? LinearOperator<K>(n_) : it->second;
    }

    void set_coefficient(const MultiIndex& i, LinearOperator<K> op) {
        if (i.vars() != vars_) throw std::invalid_argument("OperatorSeries: variable count mismatch");
        if (op.dimension() != n_) throw std::invalid_argument("OperatorSeries: dimension mismatch");
        if (i.degree() > trunc_) return;
        if (op.is_zero())
            coeffs_.erase(i);
        else
            coeffs_.insert_or_assign(i, std::move(op));
    }

    void add_coefficient(const MultiIndex& i, const LinearOperator<K>& op) {
        if (i.degree() > trunc_ || op.is_zero()) return;
        auto it = coeffs_.find(i);
        if (it == coeffs_.end())
            set_coefficient(i, op);
        else
            set_coefficient(i, it->second + op);
    }

    bool operator==(const OperatorSeries& o) const {
        return n_ == o.n_ && vars_ == o.vars_ && trunc_ == o.trunc_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const OperatorSeries& o) const { return !(*this == o); }

    ElementSeries<K> apply(const ExteriorElement<K>& u) const {
        ElementSeries<K> out(n_, vars_, trunc_);
        for (const auto& [i, op] : coeffs_) out.add_term(i, op.apply(u));
        return out;
    }

    /// Series applied to a series-valued argument (Cauchy convolution).
    ElementSeries<K> apply(const ElementSeries<K>& w) const {
        if (w.dimension() != n_ || w.vars() != vars_ || w.truncation() != trunc_)
            throw std::invalid_argument("OperatorSeries: shape mismatch");
        ElementSeries<K> out(n_, vars_, trunc_);
        for (const auto& [i, op] : coeffs_) {
            const int di = i.degree();
            for (const auto& [l, u] : w.coefficients()) {
                if (di + l.degree() > trunc_) continue;
                out.add_term(i + l, op.apply(u));
            }
        }
        return out;
    }

    /// Grade-1 blocks of every coefficient.
    RestrictionSeries<K> restrict_to_v() const {
        RestrictionSeries<K> f;
        for (const auto& [i, op] : coeffs_) {
            Matrix<K> m = op.restrict_to_v();
            if (!m.is_zero()) f.emplace(i, std::move(m));
        }
        return f;
    }

    /// One line per stored (multi-index, grade block), sparse triples.
    std::string dump() const {
        std::ostringstream os;
        for (const auto& [i, op] : coeffs_) {
            for (int g = 0; g <= n_; ++g) {
                std::ostringstream row;
                bool any = false;
                for (const auto& [b, img] : op.columns()) {
                    if (b.grade() != g) continue;
                    for (const auto& [ob, c] : img.terms()) {
                        row << " (" << index_list(b) << "->" << index_list(ob) << ":" << scalar_str(c) << ")";
                        any = true;
                    }
                }
                if (any) os << i.str() << " grade-" << g << " block:" << row.str() << "\n";
            }
        }
        return os.str();
    }

private:
    static std::string index_list(Blade b) {
        std::string s = "[";
        bool first = true;
        for (int i : b.indices()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + "]";
    }

    static std::string scalar_str(const K& c) {
        if constexpr (std::is_floating_point_v<K>) {
            return std::to_string(c);
        } else {
            return to_string(c);
        }
    }

    int n_;
    int vars_;
    int trunc_;
    std::map<MultiIndex, LinearOperator<K>> coeffs_;
};

namespace detail {
/// Expands f(z)e_{j1} ^ ... ^ f(z)e_{jk} for one basis blade, truncated.
template <class K>
ElementSeries<K> extend_blade(const RestrictionSeries<K>& f, int n, int vars, int trunc, Blade b) {
    ElementSeries<K> acc = ElementSeries<K>::constant(ExteriorElement<K>::scalar(n, K(1)), vars, trunc);
    for (int j : b.indices()) {
        ElementSeries<K> factor(n, vars, trunc);
        for (const auto& [i, m] : f) {
            if (i.degree() > trunc) continue;
            factor.add_term(i, ExteriorElement<K>::from_vector(n, m.col(j - 1)));
        }
        acc = acc.wedge(factor);
    }
    return acc;
}
}  // namespace detail

/**
 * The unique multiplicative series extension of a degree-wise action on V,
 * applied directly to one element (decomposables map to the wedge of their
 * factor images; the extension is linear across the blade expansion).
 */
template <class K>
ElementSeries<K> extend_apply(const RestrictionSeries<K>& f, int n, int vars, int trunc,
                              const ExteriorElement<K>& u) {
    for (const auto& [i, m] : f) {
        if (i.vars() != vars) throw std::invalid_argument("extend_apply: variable count mismatch");
        if (m.size() != n) throw std::invalid_argument("extend_apply: matrix size mismatch");
    }
    if (u.dimension() != n) throw std::invalid_argument("extend_apply: dimension mismatch");
    ElementSeries<K> out(n, vars, trunc);
    for (const auto& [b, c] : u.terms()) {
        ElementSeries<K> part = detail::extend_blade(f, n, vars, trunc, b);
        for (const auto& [i, elt] : part.coefficients()) out.add_term(i, elt.scaled(c));
    }
    return out;
}

/// The extension of f as a full operator series, column by basis blade.
template <class K>
OperatorSeries<K> extend_from_v(const RestrictionSeries<K>& f, int n, int vars, int trunc) {
    for (const auto& [i, m] : f) {
        if (i.vars() != vars) throw std::invalid_argument("extend_from_v: variable count mismatch");
        if (m.size() != n) throw std::invalid_argument("extend_from_v: matrix size mismatch");
    }
    OperatorSeries<K> out(n, vars, trunc);
    std::map<MultiIndex, LinearOperator<K>> cols;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const Blade b{mask};
        ElementSeries<K> part = detail::extend_blade(f, n, vars, trunc, b);
        for (const auto& [i, elt] : part.coefficients()) {
            auto it = cols.find(i);
            if (it == cols.end()) it = cols.emplace(i, LinearOperator<K>(n)).first;
            it->second.set_column(b, elt);
        }
    }
    for (auto& [i, op] : cols) out.set_coefficient(i, std::move(op));
    return out;
}

/// Cauchy product: coefficient at i is sum of D_j o E_l over j+l=i.
template <class K>
OperatorSeries<K> series_product(const OperatorSeries<K>& d, const OperatorSeries<K>& e) {
    if (d.dimension() != e.dimension() || d.vars() != e.vars() || d.truncation() != e.truncation())
        throw std::invalid_argument("series_product: shape mismatch");
    OperatorSeries<K> out(d.dimension(), d.vars(), d.truncation());
    for (const auto& [i, di] : d.coefficients()) {
        const int deg_i = i.degree();
        for (const auto& [j, ej] : e.coefficients()) {
            if (deg_i + j.degree() > d.truncation()) continue;
            out.add_coefficient(i + j, di.compose(ej));
        }
    }
    return out;
}

/**
 * Unique series D with series_product(dbar, D) = identity up to truncation.
 * Recursion in graded-lex order: D_0 = dbar_0^-1 and
 * D_i = -dbar_0^-1 (sum over 0 < j <= i of dbar_j o D_{i-j}).
 */
template <class K>
OperatorSeries<K> series_inverse(const OperatorSeries<K>& dbar) {
    const int n = dbar.dimension(), vars = dbar.vars(), trunc = dbar.truncation();
    const MultiIndex zero = MultiIndex::zero(vars);
    LinearOperator<K> d0 = dbar.coefficient(zero);
    if (d0.is_zero()) throw std::domain_error("series_inverse: constant term is zero");
    LinearOperator<K> d0_inv = d0.inverse();

    OperatorSeries<K> out(n, vars, trunc);
    out.set_coefficient(zero, d0_inv);
    for (const auto& i : indices_up_to_degree(vars, trunc)) {
        if (i.is_zero()) continue;
        LinearOperator<K> acc(n);
        for (const auto& j : sub_indices(i)) {
            if (j.is_zero()) continue;
            const LinearOperator<K> dbar_j = dbar.coefficient(j);
            if (dbar_j.is_zero()) continue;
            acc = acc + dbar_j.compose(out.coefficient(i - j));
        }
        if (!acc.is_zero()) out.set_coefficient(i, -(d0_inv.compose(acc)));
    }
    return out;
}

/**
 * Coefficient-by-coefficient residual of the pairing law
 * D(z)u ^ v = D(z)(u ^ E(z)v), where (D, E) are mutually inverse series.
 * Passing (D, Dbar) checks one form of the law, (Dbar, D) the dual one;
 * both vanish identically when the pair really is mutually inverse.
 */
template <class K>
ElementSeries<K> integration_by_parts_residual(const OperatorSeries<K>& outer,
                                               const OperatorSeries<K>& inner,
                                               const ExteriorElement<K>& u,
                                               const ExteriorElement<K>& v) {
    if (u.dimension() != outer.dimension() || v.dimension() != outer.dimension())
        throw std::invalid_argument("integration_by_parts_residual: dimension mismatch");
    ElementSeries<K> lhs = outer.apply(u).wedge_constant(v);
    ElementSeries<K> u_const =
        ElementSeries<K>::constant(u, outer.vars(), outer.truncation());
    ElementSeries<K> rhs = outer.apply(u_const.wedge(inner.apply(v)));
    return lhs - rhs;
}

}  // namespace hasse
