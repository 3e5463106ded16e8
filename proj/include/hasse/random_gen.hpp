#pragma once

#include <cstdint>
#include <vector>

#include "hasse/exterior.hpp"
#include "hasse/matrix.hpp"
#include "hasse/rational.hpp"
#include "hasse/traces.hpp"

namespace hasse {

/**
 * Deterministic splittable 64-bit generator (splitmix64). Draws avoid the
 * standard-library distributions on purpose: the stream must be identical
 * across platforms so that seeded runs are byte-reproducible.
 */
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

/// Child seed for stream `stream` of a root seed; one finalizer round.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    SplitMix64 g(root ^ (0xD1B54A32D192ED03ull * (stream + 1)));
    return g.next();
}

/// Numerator uniform in [-9,9], denominator uniform in [-9,9] without 0.
template <class K>
K random_scalar(SplitMix64& rng) {
    const long num = rng.range(-9, 9);
    long den = rng.range(-9, 8);
    if (den >= 0) ++den;  // skip zero
    return scalar_fraction<K>(num, den);
}

template <class K>
Matrix<K> random_matrix(SplitMix64& rng, int n) {
    Matrix<K> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = random_scalar<K>(rng);
    return m;
}

template <class K>
EndoTuple<K> random_tuple(SplitMix64& rng, int n, int count) {
    EndoTuple<K> t;
    t.reserve(count);
    for (int k = 0; k < count; ++k) t.push_back(random_matrix<K>(rng, n));
    return t;
}

template <class K>
Matrix<K> random_invertible_matrix(SplitMix64& rng, int n) {
    for (;;) {
        Matrix<K> m = random_matrix<K>(rng, n);
        if (!hasse::is_zero(m.determinant())) return m;
    }
}

/// Sparse element with random blades of every grade; never the zero element.
template <class K>
ExteriorElement<K> random_element(SplitMix64& rng, int n) {
    ExteriorElement<K> u(n);
    do {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
            if (rng.below(2) == 0) u.add_term(Blade{mask}, random_scalar<K>(rng));
    } while (u.is_zero());
    return u;
}

template <class K>
ExteriorElement<K> random_homogeneous_element(SplitMix64& rng, int n, int grade) {
    ExteriorElement<K> u(n);
    do {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
            if (Blade{mask}.grade() == grade && rng.below(2) == 0)
                u.add_term(Blade{mask}, random_scalar<K>(rng));
    } while (u.is_zero());
    return u;
}

}  // namespace hasse
