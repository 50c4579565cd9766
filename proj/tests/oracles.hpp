#ifndef INVSTAT_TEST_ORACLES_HPP
#define INVSTAT_TEST_ORACLES_HPP

// Brute-force reference implementations used only by tests. These stay
// deliberately naive and independent of the library's algorithms: the
// library is checked against them, never the other way around.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "invstat/first_passage.hpp"
#include "invstat/series.hpp"

namespace oracles {

/// O(T^2) first-passage scan: for every start t walk forward until the
/// log-price difference reaches rho.
inline std::vector<std::optional<std::int64_t>>
brute_force_fpt_per_start(const invstat::PriceSeries& prices, double rho) {
    const std::size_t T = prices.days();
    std::vector<double> log_price(prices.size());
    for (std::size_t u = 0; u < prices.size(); ++u) log_price[u] = std::log(prices[u]);

    std::vector<std::optional<std::int64_t>> waits(T);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t s = 1; t + s < prices.size(); ++s) {
            const double move = log_price[t + s] - log_price[t];
            if ((rho > 0 && move >= rho) || (rho < 0 && move <= rho)) {
                waits[t] = static_cast<std::int64_t>(s);
                break;
            }
        }
    }
    return waits;
}

inline invstat::FptSamples brute_force_fpt(const invstat::PriceSeries& prices, double rho) {
    invstat::FptSamples out;
    out.rho = rho;
    const auto per_start = brute_force_fpt_per_start(prices, rho);
    out.starts_total = static_cast<std::int64_t>(per_start.size());
    for (const auto& w : per_start) {
        if (w)
            out.waits.push_back(*w);
        else
            ++out.starts_censored;
    }
    return out;
}

/// Histogram by explicit counting.
inline std::map<std::int64_t, double> brute_force_pmf(const std::vector<std::int64_t>& waits) {
    std::map<std::int64_t, double> mass;
    for (const auto w : waits) mass[w] += 1.0;
    for (auto& [t, m] : mass) m /= static_cast<double>(waits.size());
    return mass;
}

/// Stable-rank quantile bins, recomputed from scratch with value-index pairs.
inline std::vector<int> brute_force_bins(const std::vector<double>& values, int bins) {
    std::vector<std::pair<double, std::size_t>> keyed(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) keyed[i] = {values[i], i};
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> bin(values.size());
    for (std::size_t rank = 0; rank < keyed.size(); ++rank)
        bin[keyed[rank].second] =
            static_cast<int>(rank * static_cast<std::size_t>(bins) / keyed.size());
    return bin;
}

/// Plug-in mutual information over explicit cell maps.
inline double brute_force_mi(const std::vector<double>& x, const std::vector<double>& y,
                             int bins) {
    const auto bx = brute_force_bins(x, bins);
    const auto by = brute_force_bins(y, bins);
    std::map<std::pair<int, int>, std::int64_t> joint;
    std::map<int, std::int64_t> mx, my;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ++joint[{bx[i], by[i]}];
        ++mx[bx[i]];
        ++my[by[i]];
    }
    const double n = static_cast<double>(x.size());
    double mi = 0.0;
    for (const auto& [cell, c] : joint) {
        const double p = static_cast<double>(c) / n;
        const double px = static_cast<double>(mx.at(cell.first)) / n;
        const double py = static_cast<double>(my.at(cell.second)) / n;
        mi += p * std::log(p / (px * py));
    }
    return mi;
}

/// Two-pass product-moment correlation written out longhand.
inline double brute_force_correlation(const std::vector<double>& x,
                                      const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, dx2 = 0.0, dy2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        dx2 += (x[i] - mx) * (x[i] - mx);
        dy2 += (y[i] - my) * (y[i] - my);
    }
    return num / (std::sqrt(dx2) * std::sqrt(dy2));
}

/// Random positive price path for property tests (log-uniform steps).
inline invstat::PriceSeries random_prices(std::size_t length, std::uint64_t seed,
                                          double step_scale = 0.02) {
    invstat::rng_engine eng(seed);
    std::vector<double> values(length);
    double log_price = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        values[t] = std::exp(log_price);
        log_price += step_scale * (2.0 * invstat::uniform_unit(eng) - 1.0);
    }
    return invstat::PriceSeries(std::move(values), "random");
}

} // namespace oracles

#endif
