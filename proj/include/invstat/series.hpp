#ifndef INVSTAT_SERIES_HPP
#define INVSTAT_SERIES_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/rng.hpp"

namespace invstat {

/// One asset's (or index's) closing-price path over uniformly spaced days.
/// Values are strictly positive and there are at least two of them, so log
/// returns always exist. Dates are optional metadata and never enter any
/// computation.
class PriceSeries {
public:
    PriceSeries(std::vector<double> values, std::string label = "",
                std::vector<std::string> dates = {})
        : values_(std::move(values)), label_(std::move(label)), dates_(std::move(dates)) {
        if (values_.size() < 2)
            throw validation_error("price series '" + label_ + "': length >= 2 required, got " +
                                   std::to_string(values_.size()));
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
                throw validation_error("price series '" + label_ + "': value at index " +
                                       std::to_string(i) + " is not a positive finite number");
        }
        if (!dates_.empty() && dates_.size() != values_.size())
            throw validation_error("price series '" + label_ + "': " +
                                   std::to_string(dates_.size()) + " dates for " +
                                   std::to_string(values_.size()) + " values");
    }

    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }
    const std::vector<std::string>& dates() const { return dates_; }

    std::size_t size() const { return values_.size(); }
    /// Number of return days T (series holds T+1 prices).
    std::size_t days() const { return values_.size() - 1; }
    double operator[](std::size_t i) const { return values_[i]; }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }

private:
    std::vector<double> values_;
    std::string label_;
    std::vector<std::string> dates_;
};

/// Daily log returns of a price series; values[i] is the return of day i+1.
/// Together with base_value this reconstructs the prices exactly up to
/// floating-point round-off.
class ReturnSeries {
public:
    ReturnSeries(std::vector<double> values, double base_value, std::string label = "")
        : values_(std::move(values)), base_value_(base_value), label_(std::move(label)) {
        if (values_.empty())
            throw validation_error("return series '" + label_ + "': at least one return required");
        if (!(base_value_ > 0.0) || !std::isfinite(base_value_))
            throw validation_error("return series '" + label_ +
                                   "': base value must be positive and finite");
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw validation_error("return series '" + label_ + "': value at index " +
                                       std::to_string(i) + " is not finite");
    }

    const std::vector<double>& values() const { return values_; }
    double base_value() const { return base_value_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
    double base_value_;
    std::string label_;
};

enum class scramble_algorithm {
    fisher_yates_mt19937_64, // the one real algorithm
    identity                 // degenerate, keeps the original order; for pipeline tests
};

inline const char* to_string(scramble_algorithm a) {
    switch (a) {
        case scramble_algorithm::fisher_yates_mt19937_64: return "fisher-yates-mt19937_64";
        case scramble_algorithm::identity: return "identity";
    }
    return "?";
}

inline scramble_algorithm parse_scramble_algorithm(const std::string& s) {
    if (s == "fisher-yates-mt19937_64") return scramble_algorithm::fisher_yates_mt19937_64;
    if (s == "identity") return scramble_algorithm::identity;
    throw validation_error("unknown scramble algorithm '" + s + "'");
}

/// Seeded recipe for the surrogate permutation. Equal seeds give identical
/// permutations for equal input lengths, on every platform.
struct ScrambleSpec {
    std::uint64_t seed = 0;
    scramble_algorithm algorithm = scramble_algorithm::fisher_yates_mt19937_64;
};

/// Log returns: values[t-1] = log(prices[t] / prices[t-1]) for t = 1..T.
inline ReturnSeries log_returns(const PriceSeries& prices) {
    std::vector<double> r(prices.days());
    for (std::size_t t = 1; t < prices.size(); ++t)
        r[t - 1] = std::log(prices[t] / prices[t - 1]);
    return ReturnSeries(std::move(r), prices.front(), prices.label());
}

/// Cumulate returns back into prices: values[t] = base * exp(sum of the
/// first t returns). Rejects paths that overflow to non-finite values.
inline PriceSeries reconstruct(const ReturnSeries& returns, const std::string& label = "") {
    std::vector<double> prices(returns.size() + 1);
    prices[0] = returns.base_value();
    double cum = 0.0;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        cum += returns[i];
        prices[i + 1] = returns.base_value() * std::exp(cum);
        if (!std::isfinite(prices[i + 1]))
            throw validation_error("reconstruct: value at index " + std::to_string(i + 1) +
                                   " is not finite");
    }
    return PriceSeries(std::move(prices), label.empty() ? returns.label() : label);
}

/// Apply the seeded permutation to the returns. The output's sorted multiset
/// of values equals the input's exactly; only the order changes.
inline ReturnSeries permute_returns(const ReturnSeries& returns, const ScrambleSpec& spec) {
    if (spec.algorithm == scramble_algorithm::identity)
        return returns;
    rng_engine eng(spec.seed);
    const auto perm = random_permutation(returns.size(), eng);
    std::vector<double> shuffled(returns.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = returns[perm[i]];
    return ReturnSeries(std::move(shuffled), returns.base_value(), returns.label());
}

/// Scrambled surrogate: permute the log returns and re-cumulate from the
/// original starting price. Destroys temporal structure, preserves the
/// unconditional return distribution and both endpoints.
inline PriceSeries scramble(const PriceSeries& prices, const ScrambleSpec& spec) {
    return reconstruct(permute_returns(log_returns(prices), spec),
                       prices.label().empty() ? "" : prices.label() + "~scrambled");
}

} // namespace invstat

#endif
