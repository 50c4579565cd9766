#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "invstat/series.hpp"
#include "oracles.hpp"

using namespace invstat;
using Catch::Matchers::WithinRel;

TEST_CASE("log returns of exact exponentials", "[series]") {
    const PriceSeries prices({1.0, std::exp(1.0), std::exp(2.0)}, "e-series");
    const ReturnSeries r = log_returns(prices);
    REQUIRE(r.size() == 2);
    CHECK(r.base_value() == 1.0);
    CHECK_THAT(r[0], WithinRel(1.0, 1e-15));
    CHECK_THAT(r[1], WithinRel(1.0, 1e-15));
}

TEST_CASE("log returns of a constant series are zero", "[series]") {
    const ReturnSeries r = log_returns(PriceSeries({5.0, 5.0, 5.0}));
    CHECK(r.base_value() == 5.0);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("log returns match an element-wise scalar loop", "[series]") {
    const PriceSeries prices = oracles::random_prices(50, 7);
    const ReturnSeries r = log_returns(prices);
    REQUIRE(r.size() == 49);
    for (std::size_t t = 1; t < prices.size(); ++t)
        CHECK(r[t - 1] == std::log(prices[t] / prices[t - 1]));
}

TEST_CASE("price series validation names the offending index", "[series]") {
    CHECK_THROWS_AS(PriceSeries({1.0}), validation_error);
    CHECK_THROWS_WITH(PriceSeries({1.0, -2.0, 3.0}, "bad"),
                      Catch::Matchers::ContainsSubstring("index 1"));
    CHECK_THROWS_AS(PriceSeries({1.0, 0.0}), validation_error);
    CHECK_THROWS_AS(PriceSeries({1.0, std::nan("")}), validation_error);
}

TEST_CASE("reconstruct single step", "[series]") {
    const PriceSeries p = reconstruct(ReturnSeries({0.05}, 1.0));
    REQUIRE(p.size() == 2);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == std::exp(0.05));
}

TEST_CASE("reconstruct base 2 with cancelling returns", "[series]") {
    const double ln2 = std::log(2.0);
    const PriceSeries p = reconstruct(ReturnSeries({ln2, -ln2}, 2.0));
    CHECK(p[0] == 2.0);
    CHECK_THAT(p[1], WithinRel(4.0, 1e-15));
    CHECK(p[2] == 2.0); // the exact cancellation leaves exp(0)
}

TEST_CASE("reconstruct after log_returns is the identity", "[series]") {
    const PriceSeries prices = oracles::random_prices(200, 11);
    const PriceSeries back = reconstruct(log_returns(prices));
    REQUIRE(back.size() == prices.size());
    for (std::size_t t = 0; t < prices.size(); ++t)
        CHECK_THAT(back[t], WithinRel(prices[t], 1e-12));
}

TEST_CASE("reconstruct rejects overflowing paths", "[series]") {
    CHECK_THROWS_AS(reconstruct(ReturnSeries({700.0, 700.0}, 1.0)), validation_error);
}

TEST_CASE("scramble of a two-return series with equal returns", "[series]") {
    // returns are [ln 2, ln 2]; any permutation leaves them unchanged
    const PriceSeries prices({1.0, 2.0, 4.0});
    const PriceSeries scrambled = scramble(prices, {123});
    const ReturnSeries r = permute_returns(log_returns(prices), {123});
    CHECK(r[0] == std::log(2.0));
    CHECK(r[1] == std::log(2.0));
    for (std::size_t t = 0; t < prices.size(); ++t)
        CHECK_THAT(scrambled[t], WithinRel(prices[t], 1e-12));
}

TEST_CASE("identity algorithm and single-return series keep the order", "[series]") {
    const PriceSeries two({1.0, 1.3});
    const PriceSeries same = scramble(two, {99, scramble_algorithm::identity});
    CHECK_THAT(same[1], WithinRel(two[1], 1e-12));

    const ReturnSeries r({0.1, -0.2, 0.3}, 1.0);
    const ReturnSeries kept = permute_returns(r, {77, scramble_algorithm::identity});
    CHECK(kept.values() == r.values());
}

TEST_CASE("scramble preserves the return multiset exactly and the endpoints", "[series]") {
    const PriceSeries prices = oracles::random_prices(1000, 5);
    const ReturnSeries original = log_returns(prices);
    for (const std::uint64_t seed : {1ULL, 42ULL, 987654321ULL}) {
        const ReturnSeries permuted = permute_returns(original, {seed});
        auto a = original.values();
        auto b = permuted.values();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b); // bitwise equality of the sorted multisets

        const PriceSeries scrambled = scramble(prices, {seed});
        CHECK(scrambled.front() == prices.front());
        CHECK_THAT(scrambled.back(), WithinRel(prices.back(), 1e-10));
    }
}

TEST_CASE("scrambling is deterministic in the seed", "[series]") {
    const PriceSeries prices = oracles::random_prices(300, 8);
    const PriceSeries a = scramble(prices, {2024});
    const PriceSeries b = scramble(prices, {2024});
    CHECK(a.values() == b.values());
    const PriceSeries c = scramble(prices, {2025});
    CHECK(a.values() != c.values());
}

TEST_CASE("unknown scramble algorithm is rejected", "[series]") {
    CHECK_THROWS_AS(parse_scramble_algorithm("xorshift"), validation_error);
    CHECK(parse_scramble_algorithm("identity") == scramble_algorithm::identity);
    CHECK(parse_scramble_algorithm("fisher-yates-mt19937_64") ==
          scramble_algorithm::fisher_yates_mt19937_64);
}
