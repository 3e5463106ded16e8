#include <catch2/catch.hpp>

#include "hasse/json_io.hpp"
#include "hasse/random_gen.hpp"

using hasse::Blade;
using hasse::ExteriorElement;
using hasse::Matrix;
using hasse::MultiIndex;
using hasse::ordered_json;
using hasse::Rational;
using hasse::SplitMix64;

TEST_CASE("element serialization follows the blade/coeff schema", "[json]") {
    ExteriorElement<Rational> u(3);
    u.add_term(Blade::from_indices({1, 3}, 3), Rational(-2, 5));
    const ordered_json j = hasse::element_to_json(u);
    CHECK(j["n"] == 3);
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["blade"] == ordered_json::array({1, 3}));
    CHECK(j["terms"][0]["coeff"] == "-2/5");
    CHECK(hasse::element_from_json<Rational>(j) == u);
}

TEST_CASE("element round-trip on random values", "[json][property]") {
    SplitMix64 rng(211);
    for (int t = 0; t < 25; ++t) {
        const auto u = hasse::random_element<Rational>(rng, 4);
        CHECK(hasse::element_from_json<Rational>(hasse::element_to_json(u)) == u);
    }
}

TEST_CASE("tensor serialization lists every index up to degree n", "[json]") {
    SplitMix64 rng(223);
    const auto phi = hasse::random_tuple<Rational>(rng, 2, 2);
    const auto tau = hasse::trace_tensor_via_hs(phi);
    const ordered_json j = hasse::tensor_to_json(tau);
    CHECK(j["n"] == 2);
    CHECK(j["entries"].size() == 6);  // C(4,2)
    CHECK(j["entries"][0]["index"] == ordered_json::array({0, 0}));
    CHECK(j["entries"][0]["value"] == "1");
    CHECK(j["entries"][1]["index"] == ordered_json::array({1, 0}));
    CHECK(hasse::tensor_from_json<Rational>(j) == tau);
}

TEST_CASE("report serialization", "[json]") {
    SplitMix64 rng(227);
    const auto phi = hasse::random_tuple<Rational>(rng, 2, 2);
    const auto report = hasse::generalized_ch_residual(phi, hasse::trace_tensor_via_hs(phi));
    const ordered_json j = hasse::report_to_json(report, 42);
    CHECK(j["identity"] == "thm48");
    CHECK(j["n"] == 2);
    CHECK(j["is_zero"] == true);
    CHECK(j["residual"].size() == 2);
    CHECK(j["seed"] == 42);
}

TEST_CASE("input documents parse and validate", "[json]") {
    const std::string text = R"({
        "n": 2,
        "mode": "rational",
        "matrices": [[["1/2", "3"], ["-1", "0"]], [["0", "1"], ["1", "0"]]],
        "seed": 7
    })";
    const auto doc = hasse::parse_input_document(text);
    CHECK(doc.n == 2);
    CHECK(doc.mode == hasse::ScalarMode::rational);
    CHECK(doc.seed == 7u);
    const auto ms = doc.parse_matrices<Rational>();
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].at(0, 0) == Rational(1, 2));
    CHECK(ms[0].at(1, 0) == Rational(-1));
}

TEST_CASE("input document errors", "[json]") {
    CHECK_THROWS_AS(hasse::parse_input_document("{nope"), hasse::ParseError);
    CHECK_THROWS_AS(hasse::parse_input_document(R"({"mode":"rational"})"), hasse::ParseError);
    CHECK_THROWS_AS(hasse::parse_input_document(R"({"n":2})"), hasse::ParseError);
    CHECK_THROWS_AS(hasse::parse_input_document(R"({"n":2,"mode":"decimal","seed":1})"),
                    hasse::ParseError);
    CHECK_THROWS_AS(hasse::parse_input_document(R"({"n":0,"seed":1})"), hasse::ParseError);

    // sizes inconsistent with n are a dimension error, not a parse error
    const auto doc = hasse::parse_input_document(
        R"({"n":2,"matrices":[[["1","0"],["0","1"],["0","0"]]]})");
    CHECK_THROWS_AS(doc.parse_matrices<Rational>(), std::invalid_argument);

    // float literals are rejected in rational mode
    const auto doc2 = hasse::parse_input_document(R"({"n":1,"matrices":[[[0.5]]]})");
    CHECK_THROWS_AS(doc2.parse_matrices<Rational>(), hasse::ParseError);
    CHECK(doc2.parse_matrices<double>()[0].at(0, 0) == 0.5);

    // integers are exact in both modes
    const auto doc3 = hasse::parse_input_document(R"({"n":1,"matrices":[[[3]]]})");
    CHECK(doc3.parse_matrices<Rational>()[0].at(0, 0) == Rational(3));
}

TEST_CASE("seed-only documents are allowed", "[json]") {
    const auto doc = hasse::parse_input_document(R"({"n":3,"seed":11})");
    CHECK(doc.matrix_count() == 0);
    CHECK(doc.seed == 11u);
}
