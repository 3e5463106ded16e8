#include <catch2/catch.hpp>

#include "hasse/hs_series.hpp"
#include "hasse/random_gen.hpp"
#include "hasse/traces.hpp"
#include "oracles.hpp"

using hasse::Blade;
using hasse::ElementSeries;
using hasse::EndoTuple;
using hasse::ExteriorElement;
using hasse::LinearOperator;
using hasse::Matrix;
using hasse::MultiIndex;
using hasse::OperatorSeries;
using hasse::Rational;
using hasse::RestrictionSeries;
using hasse::SplitMix64;

namespace {
using Elt = ExteriorElement<Rational>;
using Mat = Matrix<Rational>;

Elt apply_matrix(const Mat& m, const Elt& u) {
    // grade-1 action of a plain matrix, for spelling expected values
    Elt out(u.dimension());
    for (const auto& [b, c] : u.terms()) {
        const int j = b.indices().at(0);
        out += Elt::from_vector(u.dimension(), m.col(j - 1)).scaled(c);
    }
    return out;
}
}  // namespace

TEST_CASE("constant identity extends to the identity series", "[hs_series]") {
    RestrictionSeries<Rational> f;
    f.emplace(MultiIndex::zero(2), Mat::identity(3));
    CHECK(hasse::extend_from_v(f, 3, 2, 3) == OperatorSeries<Rational>::identity(3, 2, 3));
}

TEST_CASE("univariate extension on a 2x2 example", "[hs_series]") {
    // f(z) = 1 - Az with A = [[1,2],[3,4]]; on e1^e2 the z-coefficient is
    // -(Ae1^e2 + e1^Ae2) and the z^2 coefficient is det(A) e1^e2 = -2 e1^e2.
    Mat a(2);
    a.at(0, 0) = Rational(1);
    a.at(0, 1) = Rational(2);
    a.at(1, 0) = Rational(3);
    a.at(1, 1) = Rational(4);
    const EndoTuple<Rational> tuple{a};
    const auto series = hasse::tuple_derivation(tuple, 2);

    const Elt top = Elt::top_blade(2);
    const Elt e1 = Elt::basis_vector(2, 1), e2 = Elt::basis_vector(2, 2);

    const Elt z1 = series.coefficient(MultiIndex({1})).apply(top);
    CHECK(z1 == -(wedge(apply_matrix(a, e1), e2) + wedge(e1, apply_matrix(a, e2))));

    const Elt z2 = series.coefficient(MultiIndex({2})).apply(top);
    CHECK(z2 == Elt::basis_blade(2, Blade::top(2), Rational(-2)));
    CHECK(z2 == wedge(apply_matrix(a, e1), apply_matrix(a, e2)));
}

TEST_CASE("bivariate z1 z2 coefficient is the mixed wedge sum", "[hs_series]") {
    SplitMix64 rng(41);
    const auto phi = hasse::random_tuple<Rational>(rng, 2, 2);
    const auto series = hasse::tuple_derivation(phi, 2);
    const Elt e1 = Elt::basis_vector(2, 1), e2 = Elt::basis_vector(2, 2);
    const Elt got = series.coefficient(MultiIndex({1, 1})).apply(Elt::top_blade(2));
    const Elt expected = wedge(apply_matrix(phi[0], e1), apply_matrix(phi[1], e2)) +
                         wedge(apply_matrix(phi[1], e1), apply_matrix(phi[0], e2));
    CHECK(got == expected);
}

TEST_CASE("series product has the identity as unit", "[hs_series]") {
    SplitMix64 rng(5);
    const auto phi = hasse::random_tuple<Rational>(rng, 3, 3);
    const auto d = hasse::tuple_derivation(phi, 3);
    const auto id = OperatorSeries<Rational>::identity(3, 3, 3);
    CHECK(hasse::series_product(d, id) == d);
    CHECK(hasse::series_product(id, d) == d);
}

TEST_CASE("inverse of the identity series is itself", "[hs_series]") {
    const auto id = OperatorSeries<Rational>::identity(2, 2, 2);
    CHECK(hasse::series_inverse(id) == id);
}

TEST_CASE("univariate inverse restricted to V is the geometric expansion", "[hs_series]") {
    SplitMix64 rng(17);
    const Mat a = hasse::random_matrix<Rational>(rng, 3);
    const auto dbar = hasse::tuple_derivation(EndoTuple<Rational>{a}, 3);
    const auto d = hasse::series_inverse(dbar);
    for (int k = 0; k <= 3; ++k) {
        CHECK(d.coefficient(MultiIndex({k})).restrict_to_v() == a.pow(k));
    }
}

TEST_CASE("multivariate inverse on V matches the word-sum oracle", "[hs_series][oracle]") {
    SplitMix64 rng(23);
    for (int n = 2; n <= 3; ++n) {
        const auto phi = hasse::random_tuple<Rational>(rng, n, n);
        const auto d = hasse::series_inverse(hasse::tuple_derivation(phi, n));
        for (const auto& i : hasse::indices_up_to_degree(n, n)) {
            CHECK(d.coefficient(i).restrict_to_v() ==
                  hasse::testing::geometric_coefficient(phi, i));
        }
    }
}

TEST_CASE("the extension of the word sum telescopes against the tuple series",
          "[hs_series][oracle]") {
    SplitMix64 rng(19);
    const int n = 2;
    const auto phi = hasse::random_tuple<Rational>(rng, n, n);
    const auto dbar = hasse::tuple_derivation(phi, n);
    RestrictionSeries<Rational> geometric;
    for (const auto& i : hasse::indices_up_to_degree(n, n))
        geometric.emplace(i, hasse::testing::geometric_coefficient(phi, i));
    const auto ext = hasse::extend_from_v(geometric, n, n, n);
    CHECK(hasse::series_product(dbar, ext) == OperatorSeries<Rational>::identity(n, n, n));
    CHECK(ext == hasse::series_inverse(dbar));
}

TEST_CASE("product and inverse cancel exactly", "[hs_series]") {
    SplitMix64 rng(29);
    for (int n = 2; n <= 3; ++n) {
        const auto phi = hasse::random_tuple<Rational>(rng, n, n);
        const auto dbar = hasse::tuple_derivation(phi, n);
        const auto d = hasse::series_inverse(dbar);
        const auto id = OperatorSeries<Rational>::identity(n, n, n);
        CHECK(hasse::series_product(dbar, d) == id);
        CHECK(hasse::series_product(d, dbar) == id);
    }
}

TEST_CASE("disjoint-variable series with commuting operators commute", "[hs_series]") {
    Mat a(2), b(2);
    a.at(0, 0) = Rational(2);
    a.at(1, 1) = Rational(-3);
    b.at(0, 0) = Rational(1, 2);
    b.at(1, 1) = Rational(5);
    RestrictionSeries<Rational> f1, f2;
    f1.emplace(MultiIndex::zero(2), Mat::identity(2));
    f1.emplace(MultiIndex({1, 0}), -a);
    f2.emplace(MultiIndex::zero(2), Mat::identity(2));
    f2.emplace(MultiIndex({0, 1}), -b);
    const auto d1 = hasse::extend_from_v(f1, 2, 2, 2);
    const auto d2 = hasse::extend_from_v(f2, 2, 2, 2);
    CHECK(hasse::series_product(d1, d2) == hasse::series_product(d2, d1));
}

TEST_CASE("every coefficient satisfies the Leibniz rule", "[hs_series][property]") {
    SplitMix64 rng(31);
    const int n = 3;
    // a restriction with entries beyond degree one, so the extension is
    // not just a tuple series
    RestrictionSeries<Rational> f;
    f.emplace(MultiIndex::zero(2), Mat::identity(n));
    f.emplace(MultiIndex({1, 0}), hasse::random_matrix<Rational>(rng, n));
    f.emplace(MultiIndex({0, 1}), hasse::random_matrix<Rational>(rng, n));
    f.emplace(MultiIndex({1, 1}), hasse::random_matrix<Rational>(rng, n));
    const auto series = hasse::extend_from_v(f, n, 2, 3);

    for (int t = 0; t < 100; ++t) {
        const auto u = hasse::random_element<Rational>(rng, n);
        const auto v = hasse::random_element<Rational>(rng, n);
        const auto uv = wedge(u, v);
        for (const auto& [i, op] : series.coefficients()) {
            Elt expected(n);
            for (const auto& j : hasse::sub_indices(i))
                expected += wedge(series.coefficient(j).apply(u), series.coefficient(i - j).apply(v));
            CHECK(op.apply(uv) == expected);
        }
    }
}

TEST_CASE("products of extended series stay multiplicative", "[hs_series][property]") {
    SplitMix64 rng(33);
    const int n = 3;
    const auto d1 = hasse::tuple_derivation(hasse::random_tuple<Rational>(rng, n, n), n);
    const auto d2 = hasse::tuple_derivation(hasse::random_tuple<Rational>(rng, n, n), n);
    const auto prod = hasse::series_product(d1, d2);

    // Leibniz on the product series
    for (int t = 0; t < 20; ++t) {
        const auto u = hasse::random_element<Rational>(rng, n);
        const auto v = hasse::random_element<Rational>(rng, n);
        const auto uv = wedge(u, v);
        for (const auto& [i, op] : prod.coefficients()) {
            Elt expected(n);
            for (const auto& j : hasse::sub_indices(i))
                expected += wedge(prod.coefficient(j).apply(u), prod.coefficient(i - j).apply(v));
            CHECK(op.apply(uv) == expected);
        }
    }
    // it is grade preserving, hence determined by its action on V
    CHECK(hasse::extend_from_v(prod.restrict_to_v(), n, n, n) == prod);
}

TEST_CASE("tuple series annihilates low grades beyond their degree", "[hs_series][property]") {
    SplitMix64 rng(37);
    const int n = 4;
    const auto phi = hasse::random_tuple<Rational>(rng, n, n);
    const auto dbar = hasse::tuple_derivation(phi, n);
    for (int grade = 0; grade < n; ++grade) {
        const auto u = hasse::random_homogeneous_element<Rational>(rng, n, grade);
        for (const auto& [i, op] : dbar.coefficients()) {
            if (i.degree() > grade) CHECK(op.apply(u).is_zero());
        }
    }
}

TEST_CASE("coefficients of extended series preserve the grade", "[hs_series]") {
    SplitMix64 rng(43);
    const auto phi = hasse::random_tuple<Rational>(rng, 3, 3);
    const auto dbar = hasse::tuple_derivation(phi, 3);
    for (const auto& [i, op] : dbar.coefficients()) CHECK(op.is_grade_preserving());
    const auto d = hasse::series_inverse(dbar);
    for (const auto& [i, op] : d.coefficients()) CHECK(op.is_grade_preserving());
}

TEST_CASE("a series is determined by its restriction to V", "[hs_series]") {
    SplitMix64 rng(47);
    RestrictionSeries<Rational> f;
    f.emplace(MultiIndex::zero(2), Mat::identity(3));
    f.emplace(MultiIndex({1, 0}), hasse::random_matrix<Rational>(rng, 3));
    f.emplace(MultiIndex({0, 2}), hasse::random_matrix<Rational>(rng, 3));
    const auto series = hasse::extend_from_v(f, 3, 2, 3);
    const auto rebuilt = hasse::extend_from_v(series.restrict_to_v(), 3, 2, 3);
    CHECK(series == rebuilt);
}

TEST_CASE("integration by parts residual vanishes", "[hs_series][property]") {
    SplitMix64 rng(53);
    SECTION("identity derivation") {
        const auto id = OperatorSeries<Rational>::identity(2, 2, 2);
        const auto u = hasse::random_element<Rational>(rng, 2);
        const auto v = hasse::random_element<Rational>(rng, 2);
        CHECK(hasse::integration_by_parts_residual(id, id, u, v).is_zero());
    }
    SECTION("vectors in V, both forms, degree 2") {
        const auto phi = hasse::random_tuple<Rational>(rng, 2, 2);
        const auto dbar = hasse::tuple_derivation(phi, 2);
        const auto d = hasse::series_inverse(dbar);
        for (int t = 0; t < 20; ++t) {
            const auto u = hasse::random_homogeneous_element<Rational>(rng, 2, 1);
            const auto v = hasse::random_homogeneous_element<Rational>(rng, 2, 1);
            CHECK(hasse::integration_by_parts_residual(d, dbar, u, v).is_zero());
            CHECK(hasse::integration_by_parts_residual(dbar, d, u, v).is_zero());
        }
    }
    SECTION("mixed-grade elements at n=3") {
        const auto phi = hasse::random_tuple<Rational>(rng, 3, 3);
        const auto dbar = hasse::tuple_derivation(phi, 3);
        const auto d = hasse::series_inverse(dbar);
        for (int t = 0; t < 10; ++t) {
            const auto u = hasse::random_element<Rational>(rng, 3);
            const auto v = hasse::random_element<Rational>(rng, 3);
            CHECK(hasse::integration_by_parts_residual(d, dbar, u, v).is_zero());
            CHECK(hasse::integration_by_parts_residual(dbar, d, u, v).is_zero());
        }
    }
}

TEST_CASE("degree (1,1) pairing coefficient: the operator combination vanishes on V",
          "[hs_series][golden]") {
    SplitMix64 rng(59);
    const auto phi = hasse::random_tuple<Rational>(rng, 2, 2);
    const auto dbar = hasse::tuple_derivation(phi, 2);
    const auto d = hasse::series_inverse(dbar);
    const auto tau = hasse::trace_tensor_via_hs(phi);

    // raw inverse coefficients restricted to V
    CHECK(d.coefficient(MultiIndex({1, 0})).restrict_to_v() == phi[0]);
    CHECK(d.coefficient(MultiIndex({0, 1})).restrict_to_v() == phi[1]);
    CHECK(d.coefficient(MultiIndex({1, 1})).restrict_to_v() == phi[0] * phi[1] + phi[1] * phi[0]);

    for (int t = 0; t < 20; ++t) {
        const auto u = hasse::random_homogeneous_element<Rational>(rng, 2, 1);
        Elt combo = d.coefficient(MultiIndex({1, 1})).apply(u);
        combo -= d.coefficient(MultiIndex({1, 0})).apply(u).scaled(tau.entry(MultiIndex({0, 1})));
        combo -= d.coefficient(MultiIndex({0, 1})).apply(u).scaled(tau.entry(MultiIndex({1, 0})));
        combo += u.scaled(tau.entry(MultiIndex({1, 1})));
        CHECK(combo.is_zero());
    }
}

TEST_CASE("series shape errors", "[hs_series]") {
    const auto id2 = OperatorSeries<Rational>::identity(2, 2, 2);
    const auto id3 = OperatorSeries<Rational>::identity(3, 2, 2);
    CHECK_THROWS_AS(hasse::series_product(id2, id3), std::invalid_argument);
    CHECK_THROWS_AS(hasse::series_product(id2, OperatorSeries<Rational>::identity(2, 2, 3)),
                    std::invalid_argument);

    OperatorSeries<Rational> no_constant(2, 1, 1);
    CHECK_THROWS_AS(hasse::series_inverse(no_constant), std::domain_error);

    RestrictionSeries<Rational> bad;
    bad.emplace(MultiIndex::zero(2), Mat::identity(3));
    CHECK_THROWS_AS(hasse::extend_from_v(bad, 2, 2, 2), std::invalid_argument);
}

TEST_CASE("debug dump lists graded blocks", "[hs_series]") {
    Mat a(2);
    a.at(0, 1) = Rational(1, 2);
    const auto dbar = hasse::tuple_derivation(EndoTuple<Rational>{a}, 1);
    const std::string dump = dbar.dump();
    CHECK(dump.find("[0] grade-0 block:") != std::string::npos);
    CHECK(dump.find("[1] grade-1 block:") != std::string::npos);
    CHECK(dump.find("1/2") != std::string::npos);
}
