#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hasse/matrix.hpp"
#include "hasse/rational.hpp"

namespace hasse {

/// Blade masks use one bit per basis vector; 16 is the encoding cap.
inline constexpr int kMaxExteriorDim = 16;

/**
 * Basis blade u_{i1} ^ ... ^ u_{ik} of the exterior algebra, encoded as a
 * bitmask over {1,...,n} (bit j-1 set means u_j is a factor). Listing the
 * indices of a mask in increasing order is the canonical form; the grade
 * is the popcount. Blades order by mask value, which is the deterministic
 * iteration order used everywhere.
 */
struct Blade {
    std::uint32_t mask = 0;

    int grade() const { return std::popcount(mask); }

    bool operator==(const Blade&) const = default;
    auto operator<=>(const Blade&) const = default;

    bool contains(int i) const { return (mask >> (i - 1)) & 1u; }

    /// 1-based basis indices, ascending.
    std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = 1; i <= kMaxExteriorDim; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    static Blade scalar_unit() { return Blade{0}; }
    static Blade single(int i) { return Blade{1u << (i - 1)}; }
    static Blade top(int n) { return Blade{(1u << n) - 1u}; }

    static Blade from_indices(const std::vector<int>& idx, int n) {
        Blade b;
        for (int i : idx) {
            if (i < 1 || i > n) throw std::invalid_argument("Blade: index out of range");
            if (b.contains(i)) throw std::invalid_argument("Blade: repeated index");
            b.mask |= 1u << (i - 1);
        }
        return b;
    }
};

/**
 * Sign of merging two disjoint ordered index lists into one ascending list:
 * parity of the inversions {(a,b) : a in A, b in B, a > b}. Returns 0 when
 * the masks intersect (the wedge of overlapping blades vanishes).
 */
inline int sign_of_interleave(Blade a, Blade b) {
    if (a.mask & b.mask) return 0;
    int inversions = 0;
    std::uint32_t rest = b.mask;
    while (rest) {
        const int bit = std::countr_zero(rest);
        rest &= rest - 1;
        // a-indices strictly above this b-index each contribute one swap
        inversions += std::popcount(a.mask & ~((2u << bit) - 1u));
    }
    return (inversions & 1) ? -1 : 1;
}

/**
 * Element of the exterior algebra of an n-dimensional space: a sparse map
 * from basis blades to scalars. Zero coefficients are never stored, so the
 * zero element is exactly the empty map and equality is map equality.
 * Values are immutable once built; all arithmetic returns fresh elements.
 */
template <class K>
class ExteriorElement {
public:
    explicit ExteriorElement(int n) : n_(n) { check_dim(n); }

    static ExteriorElement scalar(int n, K c) {
        ExteriorElement e(n);
        e.add_term(Blade::scalar_unit(), std::move(c));
        return e;
    }

    /// e_i as a grade-1 element, 1-based.
    static ExteriorElement basis_vector(int n, int i) {
        if (i < 1 || i > n) throw std::invalid_argument("ExteriorElement: basis index out of range");
        ExteriorElement e(n);
        e.add_term(Blade::single(i), K(1));
        return e;
    }

    static ExteriorElement basis_blade(int n, Blade b, K c = K(1)) {
        if (b.mask >= (1u << n)) throw std::invalid_argument("ExteriorElement: blade outside dimension");
        ExteriorElement e(n);
        e.add_term(b, std::move(c));
        return e;
    }

    /// Grade-1 element with the given coordinates.
    static ExteriorElement from_vector(int n, const std::vector<K>& coords) {
        if (static_cast<int>(coords.size()) != n)
            throw std::invalid_argument("ExteriorElement: coordinate count mismatch");
        ExteriorElement e(n);
        for (int i = 0; i < n; ++i) e.add_term(Blade::single(i + 1), coords[i]);
        return e;
    }

    /// e_1 ^ e_2 ^ ... ^ e_n.
    static ExteriorElement top_blade(int n) { return basis_blade(n, Blade::top(n)); }

    int dimension() const { return n_; }
    const std::map<Blade, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    K coefficient(Blade b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? K(0) : it->second;
    }

    bool operator==(const ExteriorElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const ExteriorElement& o) const { return !(*this == o); }

    ExteriorElement operator-() const {
        ExteriorElement r(n_);
        for (const auto& [b, c] : terms_) r.terms_.emplace(b, -c);
        return r;
    }

    ExteriorElement operator+(const ExteriorElement& o) const {
        require_same(o);
        ExteriorElement r(*this);
        for (const auto& [b, c] : o.terms_) r.add_term(b, c);
        return r;
    }

    ExteriorElement operator-(const ExteriorElement& o) const { return *this + (-o); }
    ExteriorElement& operator+=(const ExteriorElement& o) { return *this = *this + o; }
    ExteriorElement& operator-=(const ExteriorElement& o) { return *this = *this - o; }

    ExteriorElement scaled(const K& c) const {
        ExteriorElement r(n_);
        if (hasse::is_zero(c)) return r;
        for (const auto& [b, x] : terms_) r.add_term(b, x * c);
        return r;
    }

    /// The blades of grade k, as an element.
    ExteriorElement grade_component(int k) const {
        ExteriorElement r(n_);
        for (const auto& [b, c] : terms_)
            if (b.grade() == k) r.terms_.emplace(b, c);
        return r;
    }

    bool is_homogeneous(int k) const {
        for (const auto& [b, c] : terms_)
            if (b.grade() != k) return false;
        return true;
    }

    /// Accumulates c on blade b, dropping the entry if it cancels to zero.
    void add_term(Blade b, K c) {
        if (hasse::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(b, std::move(c));
        if (!inserted) {
            it->second += c;
            if (hasse::is_zero(it->second)) terms_.erase(it);
        }
    }

private:
    static void check_dim(int n) {
        if (n < 1 || n > kMaxExteriorDim)
            throw std::invalid_argument("ExteriorElement: dimension out of range [1,16]");
    }

    void require_same(const ExteriorElement& o) const {
        if (o.n_ != n_) throw std::invalid_argument("ExteriorElement: dimension mismatch");
    }

    int n_;
    std::map<Blade, K> terms_;
};

/// Bilinear wedge product; blade pairs with common factors vanish.
template <class K>
ExteriorElement<K> wedge(const ExteriorElement<K>& u, const ExteriorElement<K>& v) {
    if (u.dimension() != v.dimension())
        throw std::invalid_argument("wedge: dimension mismatch");
    ExteriorElement<K> r(u.dimension());
    for (const auto& [bu, cu] : u.terms())
        for (const auto& [bv, cv] : v.terms()) {
            const int s = sign_of_interleave(bu, bv);
            if (s == 0) continue;
            K c = cu * cv;
            if (s < 0) c = -c;
            r.add_term(Blade{bu.mask | bv.mask}, std::move(c));
        }
    return r;
}

/// Coefficient of the full blade e_1 ^ ... ^ e_n (0 when absent).
template <class K>
K top_form_coefficient(const ExteriorElement<K>& u) {
    return u.coefficient(Blade::top(u.dimension()));
}

}  // namespace hasse
