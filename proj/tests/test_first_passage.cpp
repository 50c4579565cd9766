#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "invstat/first_passage.hpp"
#include "invstat/synthetic.hpp"
#include "oracles.hpp"

using namespace invstat;

TEST_CASE("single exact crossing", "[fpt]") {
    const PriceSeries prices({1.0, std::exp(0.05)});
    const FptSamples s = first_passage_times(prices, Barrier(0.05));
    CHECK(s.starts_total == 1);
    CHECK(s.waits == std::vector<std::int64_t>{1});
    CHECK(s.starts_censored == 0);
}

TEST_CASE("crossing level reached exactly counts (>= semantics)", "[fpt]") {
    // rho equals the computed log move bit for bit
    const PriceSeries prices({1.0, 2.0});
    const FptSamples s = first_passage_times(prices, Barrier(std::log(2.0)));
    CHECK(s.waits == std::vector<std::int64_t>{1});
}

TEST_CASE("deterministic drift crosses every five days", "[fpt]") {
    std::vector<double> values;
    for (int t = 0; t <= 10; ++t) values.push_back(std::exp(0.01 * t));
    // nudge the barrier below the exact five-step move: the crossing decision
    // must not hang on the last ulp of log()
    const double rho = 0.05 - 1e-12;
    const FptSamples s = first_passage_times(PriceSeries(values), Barrier(rho));
    CHECK(s.starts_total == 10);
    CHECK(s.waits == std::vector<std::int64_t>(6, 5));
    CHECK(s.starts_censored == 4);
}

TEST_CASE("no down-crossings on a strictly increasing series", "[fpt]") {
    std::vector<double> values;
    for (int t = 0; t <= 20; ++t) values.push_back(std::exp(0.01 * t));
    const FptSamples s = first_passage_times(PriceSeries(values), Barrier(-0.05));
    CHECK(s.waits.empty());
    CHECK(s.starts_censored == 20);
}

TEST_CASE("matches the brute-force scan on random series", "[fpt]") {
    for (const std::uint64_t seed : {3ULL, 17ULL, 272ULL}) {
        const PriceSeries prices = oracles::random_prices(200, seed);
        for (const double rho : {0.03, -0.03}) {
            const FptSamples fast = first_passage_times(prices, Barrier(rho));
            const FptSamples brute = oracles::brute_force_fpt(prices, rho);
            CHECK(fast.waits == brute.waits);
            CHECK(fast.starts_total == brute.starts_total);
            CHECK(fast.starts_censored == brute.starts_censored);
        }
    }
}

TEST_CASE("waiting times grow with the barrier", "[fpt]") {
    const PriceSeries prices = oracles::random_prices(400, 31);
    const auto low = oracles::brute_force_fpt_per_start(prices, 0.02);
    const auto high = oracles::brute_force_fpt_per_start(prices, 0.05);
    for (std::size_t t = 0; t < low.size(); ++t) {
        if (high[t]) {
            REQUIRE(low[t].has_value()); // censoring can only increase
            CHECK(*low[t] <= *high[t]);
        }
    }
    const FptSamples s_low = first_passage_times(prices, Barrier(0.02));
    const FptSamples s_high = first_passage_times(prices, Barrier(0.05));
    CHECK(s_low.starts_censored <= s_high.starts_censored);
}

TEST_CASE("barrier must be nonzero and finite", "[fpt]") {
    CHECK_THROWS_AS(Barrier(0.0), validation_error);
    CHECK_THROWS_AS(Barrier(std::nan("")), validation_error);
}

TEST_CASE("pmf of a point mass", "[fpt]") {
    FptSamples s;
    s.rho = 0.05;
    s.waits = {5, 5, 5, 5, 5, 5};
    s.starts_total = 10;
    s.starts_censored = 4;
    const EmpiricalPmf pmf = empirical_pmf(s);
    CHECK(pmf.t_max == 5);
    CHECK(pmf.at(5) == 1.0);
    CHECK(pmf.at(4) == 0.0);
    CHECK(empirical_mode(pmf) == 5);
}

TEST_CASE("pmf of a small hand sample", "[fpt]") {
    FptSamples s;
    s.rho = 0.05;
    s.waits = {1, 2, 2, 3};
    s.starts_total = 4;
    const EmpiricalPmf pmf = empirical_pmf(s);
    CHECK(pmf.at(1) == 0.25);
    CHECK(pmf.at(2) == 0.5);
    CHECK(pmf.at(3) == 0.25);
    CHECK(empirical_mode(pmf) == 2);
}

TEST_CASE("pmf matches a counting oracle and sums to one", "[fpt]") {
    const PriceSeries prices = oracles::random_prices(500, 12);
    const FptSamples s = first_passage_times(prices, Barrier(0.02));
    REQUIRE(s.waits.size() > 10);
    const EmpiricalPmf pmf = empirical_pmf(s);
    const auto expected = oracles::brute_force_pmf(s.waits);
    for (const auto& [t, m] : expected) CHECK(pmf.at(t) == m);
    double total = 0.0;
    for (std::int64_t t = 1; t <= pmf.t_max; ++t) total += pmf.at(t);
    CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("explicit t_max truncates and flags", "[fpt]") {
    FptSamples s;
    s.rho = 0.05;
    s.waits = {1, 5};
    s.starts_total = 2;
    const EmpiricalPmf pmf = empirical_pmf(s, 3);
    CHECK(pmf.truncated);
    CHECK(pmf.truncated_samples == 1);
    CHECK(pmf.at(1) == 0.5);
    CHECK(pmf.at(3) == 0.0);
}

TEST_CASE("empty samples are rejected", "[fpt]") {
    FptSamples s;
    s.rho = -0.05;
    s.starts_total = 10;
    s.starts_censored = 10;
    CHECK_THROWS_AS(empirical_pmf(s), numeric_error);
}

TEST_CASE("averaging pmfs pools mass and counts", "[fpt]") {
    FptSamples a, b;
    a.rho = b.rho = 0.05;
    a.waits = {1, 1, 2};
    a.starts_total = 3;
    b.waits = {2, 3};
    b.starts_total = 2;
    const EmpiricalPmf avg = average_pmfs({empirical_pmf(a), empirical_pmf(b)});
    CHECK(avg.t_max == 3);
    CHECK_THAT(avg.at(1), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(avg.at(2), Catch::Matchers::WithinAbs((1.0 / 3.0 + 0.5) / 2.0, 1e-15));
    CHECK(avg.n_samples == 5);
}

TEST_CASE("asymmetry statistic rejects one-sided series", "[fpt]") {
    std::vector<double> values;
    for (int t = 0; t <= 300; ++t) values.push_back(std::exp(0.01 * t));
    CHECK_THROWS_AS(asymmetry_stat(PriceSeries(values), 0.05), numeric_error);
}

TEST_CASE("asymmetry statistic centers near zero on symmetric walks", "[fpt]") {
    std::vector<double> stats;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const PriceSeries s = generate_gbm({0.0, 0.01, 30000, seed});
        stats.push_back(asymmetry_stat(s, 0.03));
    }
    std::sort(stats.begin(), stats.end());
    const double median = stats[stats.size() / 2];
    CHECK(std::fabs(median) <= 2.0);
}

TEST_CASE("asymmetry statistic is positive under downturn coupling", "[fpt]") {
    int positive = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RegimeSpec spec;
        spec.days = 30000;
        spec.seed = seed;
        const RegimePanel rp = generate_regime_panel(spec);
        if (asymmetry_stat(build_index(rp.panel), 0.05) > 0.0) ++positive;
    }
    CHECK(positive >= 4);
}
