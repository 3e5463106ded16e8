#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hasse {

/**
 * Exponent vector (i1,...,im) of a monomial z1^i1 ... zm^im.
 *
 * Ordered graded-lexicographically: first by total degree, then
 * lexicographically with earlier variables weighing more (so within one
 * degree (1,0,0) precedes (0,1,0) precedes (0,0,1)). The order is total
 * and deterministic; every map keyed by MultiIndex iterates in it.
 */
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
        for (int v : e_)
            if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }

    static MultiIndex zero(int vars) { return MultiIndex(std::vector<int>(vars, 0)); }

    /// e_k, 0-based position.
    static MultiIndex unit(int vars, int k) {
        std::vector<int> e(vars, 0);
        e.at(k) = 1;
        return MultiIndex(std::move(e));
    }

    int vars() const { return static_cast<int>(e_.size()); }
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    int operator[](int k) const { return e_[k]; }
    const std::vector<int>& exponents() const { return e_; }

    bool is_zero() const { return degree() == 0; }
    bool is_square_free() const {
        for (int v : e_)
            if (v > 1) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        require_same_vars(o);
        std::vector<int> e(e_);
        for (int k = 0; k < vars(); ++k) e[k] += o.e_[k];
        return MultiIndex(std::move(e));
    }

    bool componentwise_leq(const MultiIndex& o) const {
        require_same_vars(o);
        for (int k = 0; k < vars(); ++k)
            if (e_[k] > o.e_[k]) return false;
        return true;
    }

    /// Componentwise difference; requires o <= *this componentwise.
    MultiIndex operator-(const MultiIndex& o) const {
        if (!o.componentwise_leq(*this)) throw std::invalid_argument("MultiIndex: negative difference");
        std::vector<int> e(e_);
        for (int k = 0; k < vars(); ++k) e[k] -= o.e_[k];
        return MultiIndex(std::move(e));
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

    bool operator<(const MultiIndex& o) const {
        require_same_vars(o);
        const int da = degree(), db = o.degree();
        if (da != db) return da < db;
        for (int k = 0; k < vars(); ++k)
            if (e_[k] != o.e_[k]) return e_[k] > o.e_[k];
        return false;
    }

    std::string str() const {
        std::string s = "[";
        for (int k = 0; k < vars(); ++k) {
            if (k) s += ",";
            s += std::to_string(e_[k]);
        }
        return s + "]";
    }

private:
    void require_same_vars(const MultiIndex& o) const {
        if (o.vars() != vars()) throw std::invalid_argument("MultiIndex: variable count mismatch");
    }

    std::vector<int> e_;
};

namespace detail {
inline void emit_degree(int vars, int deg, std::vector<int>& prefix,
                        const std::function<void(const MultiIndex&)>& fn) {
    if (vars == 1) {
        prefix.push_back(deg);
        fn(MultiIndex(prefix));
        prefix.pop_back();
        return;
    }
    for (int head = deg; head >= 0; --head) {
        prefix.push_back(head);
        emit_degree(vars - 1, deg - head, prefix, fn);
        prefix.pop_back();
    }
}
}  // namespace detail

/// All indices of exact total degree `deg`, in the MultiIndex order.
inline std::vector<MultiIndex> indices_of_degree(int vars, int deg) {
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    detail::emit_degree(vars, deg, prefix, [&](const MultiIndex& i) { out.push_back(i); });
    return out;
}

/// All indices with total degree <= bound, ascending graded-lex.
inline std::vector<MultiIndex> indices_up_to_degree(int vars, int bound) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= bound; ++d)
        for (auto& i : indices_of_degree(vars, d)) out.push_back(i);
    return out;
}

/// All j with 0 <= j <= i componentwise (odometer order, includes 0 and i).
inline std::vector<MultiIndex> sub_indices(const MultiIndex& i) {
    std::vector<MultiIndex> out;
    std::vector<int> j(i.vars(), 0);
    while (true) {
        out.push_back(MultiIndex(j));
        int k = i.vars() - 1;
        while (k >= 0) {
            if (j[k] < i[k]) {
                ++j[k];
                break;
            }
            j[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

}  // namespace hasse
