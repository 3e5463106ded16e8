#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace hasse {

/**
 * Exact rational scalar over arbitrary-precision integers.
 *
 * Values are always canonical: lowest terms, denominator > 0, zero is 0/1.
 * External string format is "p/q", or "p" when the denominator is 1.
 *
 * This is the default ground field of the library. Every template that
 * takes a scalar parameter also accepts `double`, which trades exactness
 * for speed and exists purely as a numerical-degradation diagnostic.
 */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // implicit: generic code writes K(0), K(1)
    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    static Rational from_mpq(mpq_class q) {
        Rational r;
        r.v_ = std::move(q);
        r.v_.canonicalize();
        return r;
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return from_mpq(-v_); }
    Rational operator+(const Rational& o) const { return from_mpq(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return from_mpq(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return from_mpq(v_ * o.v_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return from_mpq(v_ / o.v_);
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }
    bool is_integer() const { return v_.get_den() == 1; }

    double to_double() const { return v_.get_d(); }

    std::string str() const {
        if (is_integer()) return numerator_str();
        return numerator_str() + "/" + denominator_str();
    }

    /// Parses the external format: optional '-', digits, optional '/' + positive digits.
    static Rational parse(const std::string& text) {
        if (!looks_valid(text)) throw std::invalid_argument("Rational: malformed literal '" + text + "'");
        const auto slash = text.find('/');
        mpz_class num(slash == std::string::npos ? text : text.substr(0, slash), 10);
        mpz_class den(slash == std::string::npos ? std::string("1") : text.substr(slash + 1), 10);
        mpq_class q(num, den);
        q.canonicalize();
        return from_mpq(std::move(q));
    }

private:
    static bool looks_valid(const std::string& t) {
        std::size_t i = 0;
        if (i < t.size() && t[i] == '-') ++i;
        std::size_t digits = 0;
        while (i < t.size() && t[i] >= '0' && t[i] <= '9') { ++i; ++digits; }
        if (digits == 0) return false;
        if (i == t.size()) return true;
        if (t[i] != '/') return false;
        ++i;
        digits = 0;
        while (i < t.size() && t[i] >= '0' && t[i] <= '9') { ++i; ++digits; }
        return digits > 0 && i == t.size();
    }

    mpq_class v_;
};

inline std::string to_string(const Rational& r) { return r.str(); }

template <class S>
inline std::basic_ostream<char, S>& operator<<(std::basic_ostream<char, S>& os, const Rational& r) {
    return os << r.str();
}

// --- scalar helpers shared by the templated modules -----------------------

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

/// Builds num/den in the scalar type K (exact for Rational, a quotient for double).
template <class K>
K scalar_fraction(long num, long den) {
    if constexpr (std::is_floating_point_v<K>) {
        return static_cast<K>(num) / static_cast<K>(den);
    } else {
        return K(num, den);
    }
}

/// Accepts the rational literal format in both modes; float mode evaluates the quotient.
template <class K>
K parse_scalar(const std::string& text) {
    Rational r = Rational::parse(text);
    if constexpr (std::is_floating_point_v<K>) {
        return r.to_double();
    } else {
        return r;
    }
}

/// 1/k!, exact in rational mode.
template <class K>
K inverse_factorial(int k) {
    if (k < 0) throw std::invalid_argument("inverse_factorial: negative argument");
    K r(1);
    for (int i = 2; i <= k; ++i) r = r / K(i);
    return r;
}

}  // namespace hasse
