#include <catch2/catch.hpp>

#include <algorithm>

#include "hasse/multi_index.hpp"

using hasse::MultiIndex;

TEST_CASE("graded-lex order: degree first, then earlier variables heavier", "[multi_index]") {
    const MultiIndex a({1, 0, 0}), b({0, 1, 0}), c({0, 0, 1});
    CHECK(a < b);
    CHECK(b < c);
    CHECK(MultiIndex::zero(3) < a);
    CHECK(c < MultiIndex({2, 0, 0}));  // degree dominates
    CHECK(MultiIndex({2, 0, 0}) < MultiIndex({1, 1, 0}));
    CHECK(MultiIndex({1, 1, 0}) < MultiIndex({1, 0, 1}));
    CHECK(MultiIndex({1, 0, 1}) < MultiIndex({0, 2, 0}));
}

TEST_CASE("enumeration matches the order and the counts", "[multi_index]") {
    const auto all = hasse::indices_up_to_degree(3, 3);
    CHECK(all.size() == 20);  // C(6,3)
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(all.front() == MultiIndex::zero(3));
    CHECK(all[1] == MultiIndex({1, 0, 0}));
    CHECK(hasse::indices_of_degree(3, 2).size() == 6);
    CHECK(hasse::indices_of_degree(6, 6).size() == 462);
    CHECK(hasse::indices_up_to_degree(6, 6).size() == 924);  // C(12,6)
}

TEST_CASE("componentwise operations", "[multi_index]") {
    const MultiIndex i({2, 1}), j({1, 0});
    CHECK(i + j == MultiIndex({3, 1}));
    CHECK(i - j == MultiIndex({1, 1}));
    CHECK(j.componentwise_leq(i));
    CHECK_FALSE(i.componentwise_leq(j));
    CHECK_THROWS_AS(j - i, std::invalid_argument);
    CHECK_THROWS_AS(i + MultiIndex({1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({-1, 0}), std::invalid_argument);
}

TEST_CASE("sub-index enumeration covers the full box", "[multi_index]") {
    const auto subs = hasse::sub_indices(MultiIndex({2, 1, 0}));
    CHECK(subs.size() == 6);  // (2+1)(1+1)(0+1)
    CHECK(std::count(subs.begin(), subs.end(), MultiIndex({0, 0, 0})) == 1);
    CHECK(std::count(subs.begin(), subs.end(), MultiIndex({2, 1, 0})) == 1);
    CHECK(std::count(subs.begin(), subs.end(), MultiIndex({1, 1, 0})) == 1);
}

TEST_CASE("square-free detection and unit indices", "[multi_index]") {
    CHECK(MultiIndex({1, 0, 1}).is_square_free());
    CHECK_FALSE(MultiIndex({2, 0, 0}).is_square_free());
    CHECK(MultiIndex::unit(4, 2) == MultiIndex({0, 0, 1, 0}));
    CHECK(MultiIndex({3, 1}).degree() == 4);
    CHECK(MultiIndex({2, 1, 0}).str() == "[2,1,0]");
}
