#ifndef INVSTAT_INDEX_HPP
#define INVSTAT_INDEX_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/series.hpp"

namespace invstat {

/// N stocks' closing prices on a shared day grid; rows_[n][t] is stock n's
/// close on day t. All entries positive, all rows equally long, N >= 2.
class PricePanel {
public:
    PricePanel(std::vector<std::string> names, std::vector<std::vector<double>> rows,
               std::vector<std::string> dates = {})
        : names_(std::move(names)), rows_(std::move(rows)), dates_(std::move(dates)) {
        if (rows_.size() < 2)
            throw validation_error("price panel: at least 2 stocks required, got " +
                                   std::to_string(rows_.size()));
        if (names_.size() != rows_.size())
            throw validation_error("price panel: " + std::to_string(names_.size()) +
                                   " names for " + std::to_string(rows_.size()) + " stocks");
        const std::size_t len = rows_.front().size();
        if (len < 2) throw validation_error("price panel: length >= 2 required");
        for (std::size_t n = 0; n < rows_.size(); ++n) {
            if (rows_[n].size() != len)
                throw validation_error("price panel: stock '" + names_[n] + "' has " +
                                       std::to_string(rows_[n].size()) + " days, expected " +
                                       std::to_string(len));
            for (std::size_t t = 0; t < len; ++t)
                if (!(rows_[n][t] > 0.0) || !std::isfinite(rows_[n][t]))
                    throw validation_error("price panel: stock '" + names_[n] + "' day " +
                                           std::to_string(t) +
                                           " is not a positive finite number");
        }
        if (!dates_.empty() && dates_.size() != len)
            throw validation_error("price panel: " + std::to_string(dates_.size()) +
                                   " dates for " + std::to_string(len) + " days");
    }

    std::size_t stocks() const { return rows_.size(); }
    std::size_t size() const { return rows_.front().size(); }
    std::size_t days() const { return size() - 1; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t n) const { return names_[n]; }
    const std::vector<double>& row(std::size_t n) const { return rows_[n]; }
    const std::vector<std::string>& dates() const { return dates_; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::string> dates_;
};

/// Equal-weight artificial index: I_t = (1/N) sum_n S_{n,t} / S_{n,0}.
/// Day-0 normalization gives every stock the same initial weight and pins
/// I_0 = 1 exactly.
inline PriceSeries build_index(const PricePanel& panel, const std::string& label = "index") {
    const std::size_t N = panel.stocks();
    std::vector<double> index(panel.size(), 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        const auto& row = panel.row(n);
        const double base = row[0];
        for (std::size_t t = 0; t < row.size(); ++t) index[t] += row[t] / base;
    }
    for (double& v : index) v /= static_cast<double>(N);
    return PriceSeries(std::move(index), label, panel.dates());
}

/// The n-th index: the equal-weight index over every stock except stock n.
inline PriceSeries leave_one_out_index(const PricePanel& panel, std::size_t excluded) {
    if (excluded >= panel.stocks())
        throw validation_error("leave_one_out_index: stock " + std::to_string(excluded) +
                               " out of range (N=" + std::to_string(panel.stocks()) + ")");
    const std::size_t N = panel.stocks();
    std::vector<double> index(panel.size(), 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        if (n == excluded) continue;
        const auto& row = panel.row(n);
        const double base = row[0];
        for (std::size_t t = 0; t < row.size(); ++t) index[t] += row[t] / base;
    }
    for (double& v : index) v /= static_cast<double>(N - 1);
    return PriceSeries(std::move(index), "index-excl-" + panel.name(excluded), panel.dates());
}

} // namespace invstat

#endif
