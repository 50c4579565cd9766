#ifndef INVSTAT_DEPENDENCE_HPP
#define INVSTAT_DEPENDENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/index.hpp"
#include "invstat/rng.hpp"
#include "invstat/series.hpp"

namespace invstat {

/// Day indices split by the sign of the index move over length-L windows:
/// window k covers return days (k-1)L+1 .. kL and lands in up_days when
/// I_{kL} - I_{(k-1)L} > 0, in down_days when < 0, in neither when exactly 0.
/// The two sets are disjoint by construction.
struct WindowPartition {
    std::int64_t window_length = 0;
    std::vector<std::int64_t> up_days;   // sorted, 1-based return-day indices
    std::vector<std::int64_t> down_days; // sorted, disjoint from up_days
    std::int64_t flat_windows = 0;
    std::int64_t tail_days_dropped = 0;
};

/// Classify whole windows by the raw index difference over the window (not
/// the log return). Days past the last full window are dropped and counted.
inline WindowPartition partition_updown(const PriceSeries& index, std::int64_t L) {
    if (L < 1) throw validation_error("window length must be >= 1");
    const std::int64_t T = static_cast<std::int64_t>(index.days());
    if (T < L)
        throw validation_error("window length L=" + std::to_string(L) +
                               " exceeds series days T=" + std::to_string(T));
    WindowPartition part;
    part.window_length = L;
    const std::int64_t windows = T / L;
    part.tail_days_dropped = T - windows * L;
    for (std::int64_t k = 1; k <= windows; ++k) {
        const double delta = index[static_cast<std::size_t>(k * L)] -
                             index[static_cast<std::size_t>((k - 1) * L)];
        if (delta == 0.0) {
            ++part.flat_windows;
            continue;
        }
        auto& target = delta > 0.0 ? part.up_days : part.down_days;
        for (std::int64_t t = (k - 1) * L + 1; t <= k * L; ++t) target.push_back(t);
    }
    return part;
}

/// Marginal discretization for the plug-in estimator: B quantile bins per
/// margin, ties broken by stable rank, so bin occupancies differ by at most
/// one and the marginal entropies sit at log B.
struct BinningSpec {
    int bins_per_margin = 8;
};

inline constexpr const char* binning_scheme_id = "quantile-stable-rank";

namespace detail {

inline std::vector<int> quantile_bins(std::span<const double> values, int bins) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return values[i] != values[j] ? values[i] < values[j] : i < j;
    });
    std::vector<int> bin(n);
    for (std::size_t rank = 0; rank < n; ++rank)
        bin[order[rank]] = static_cast<int>(rank * static_cast<std::size_t>(bins) / n);
    return bin;
}

inline void check_margin(std::span<const double> values, const char* which) {
    double lo = values.front(), hi = values.front();
    for (const double v : values) {
        if (!std::isfinite(v))
            throw validation_error(std::string("margin ") + which + " contains non-finite values");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi)
        throw validation_error(std::string("zero-entropy margin: all values of ") + which +
                               " are equal");
}

} // namespace detail

/// Plug-in mutual information in nats: discretize each margin into quantile
/// bins, then sum p log(p / (p_x p_y)) over joint cells with positive count.
/// The result lies in [0, log B].
inline double plugin_mutual_information(std::span<const double> x, std::span<const double> y,
                                        const BinningSpec& spec = {}) {
    if (spec.bins_per_margin < 2) throw validation_error("bins_per_margin must be >= 2");
    const std::size_t B = static_cast<std::size_t>(spec.bins_per_margin);
    if (x.size() != y.size())
        throw validation_error("mutual information: sample lengths differ (" +
                               std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 10 * B)
        throw validation_error("mutual information: need at least 10*B = " +
                               std::to_string(10 * B) + " samples, got " +
                               std::to_string(x.size()));
    detail::check_margin(x, "x");
    detail::check_margin(y, "y");

    const std::vector<int> bx = detail::quantile_bins(x, spec.bins_per_margin);
    const std::vector<int> by = detail::quantile_bins(y, spec.bins_per_margin);

    const std::size_t n = x.size();
    std::vector<std::int64_t> joint(B * B, 0), margin_x(B, 0), margin_y(B, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ix = static_cast<std::size_t>(bx[i]);
        const auto iy = static_cast<std::size_t>(by[i]);
        ++joint[ix * B + iy];
        ++margin_x[ix];
        ++margin_y[iy];
    }

    double mi = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t ix = 0; ix < B; ++ix) {
        for (std::size_t iy = 0; iy < B; ++iy) {
            const std::int64_t c = joint[ix * B + iy];
            if (c == 0) continue;
            const double p = static_cast<double>(c) / dn;
            mi += p * std::log(static_cast<double>(c) * dn /
                               (static_cast<double>(margin_x[ix]) *
                                static_cast<double>(margin_y[iy])));
        }
    }
    return std::clamp(mi, 0.0, std::log(static_cast<double>(B)));
}

/// Product-moment correlation, exact +-1 on proportional margins, clamped
/// into [-1, 1] against round-off.
inline double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw validation_error("correlation: sample lengths differ (" + std::to_string(x.size()) +
                               " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 2) throw validation_error("correlation: need at least 2 samples");
    detail::check_margin(x, "x");
    detail::check_margin(y, "y");

    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct DependenceOptions {
    BinningSpec binning{};
    /// Subsample the larger of U/D down to the smaller's size before
    /// estimating (seeded, deterministic). Off by default: sizes are
    /// reported instead, since plug-in bias depends on the sample count.
    bool equalize_sets = false;
    std::uint64_t equalize_seed = 0;
    /// Feasibility floor: each of |U|, |D| must be >= this factor times B.
    int min_samples_per_bin = 10;
};

/// Mean dependence between each stock and its leave-one-out index,
/// conditional on up vs down windows of the full index.
struct DependenceMeasures {
    double mean_mi_up = 0.0;
    double mean_mi_down = 0.0;
    double mean_corr_up = 0.0;
    double mean_corr_down = 0.0;
    std::int64_t up_days = 0;   // sample size per stock after any equalization
    std::int64_t down_days = 0;
};

namespace detail {

// Per-panel reusables for the L sweep: the full index and, per stock, the
// stock's own log returns plus its leave-one-out index's log returns.
struct dependence_context {
    PriceSeries index;
    std::vector<std::vector<double>> stock_returns;
    std::vector<std::vector<double>> loo_returns;
};

inline dependence_context make_dependence_context(const PricePanel& panel) {
    dependence_context ctx{build_index(panel), {}, {}};
    ctx.stock_returns.reserve(panel.stocks());
    ctx.loo_returns.reserve(panel.stocks());
    for (std::size_t n = 0; n < panel.stocks(); ++n) {
        ctx.stock_returns.push_back(
            log_returns(PriceSeries(panel.row(n), panel.name(n))).values());
        ctx.loo_returns.push_back(log_returns(leave_one_out_index(panel, n)).values());
    }
    return ctx;
}

inline std::vector<std::int64_t> subsample_days(const std::vector<std::int64_t>& days,
                                                std::size_t keep, std::uint64_t seed) {
    rng_engine eng(seed);
    std::vector<std::int64_t> pool = days;
    for (std::size_t i = 0; i < keep; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(uniform_below(eng, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(keep);
    std::sort(pool.begin(), pool.end());
    return pool;
}

inline DependenceMeasures mean_dependence_impl(const dependence_context& ctx, std::int64_t L,
                                               const DependenceOptions& opts) {
    const WindowPartition part = partition_updown(ctx.index, L);
    const std::size_t need = static_cast<std::size_t>(opts.min_samples_per_bin) *
                             static_cast<std::size_t>(opts.binning.bins_per_margin);
    if (part.up_days.size() < need)
        throw numeric_error("set U has " + std::to_string(part.up_days.size()) +
                            " days for L=" + std::to_string(L) + ", need >= " +
                            std::to_string(need));
    if (part.down_days.size() < need)
        throw numeric_error("set D has " + std::to_string(part.down_days.size()) +
                            " days for L=" + std::to_string(L) + ", need >= " +
                            std::to_string(need));

    std::vector<std::int64_t> up = part.up_days;
    std::vector<std::int64_t> down = part.down_days;
    if (opts.equalize_sets) {
        const std::size_t keep = std::min(up.size(), down.size());
        if (up.size() > keep)
            up = subsample_days(up, keep, opts.equalize_seed ^ static_cast<std::uint64_t>(L));
        if (down.size() > keep)
            down = subsample_days(down, keep, opts.equalize_seed ^ static_cast<std::uint64_t>(L));
    }

    const auto gather = [](const std::vector<double>& returns,
                           const std::vector<std::int64_t>& days) {
        std::vector<double> out(days.size());
        for (std::size_t i = 0; i < days.size(); ++i)
            out[i] = returns[static_cast<std::size_t>(days[i] - 1)]; // day t -> returns[t-1]
        return out;
    };

    const std::size_t N = ctx.stock_returns.size();
    DependenceMeasures m;
    m.up_days = static_cast<std::int64_t>(up.size());
    m.down_days = static_cast<std::int64_t>(down.size());
    for (std::size_t n = 0; n < N; ++n) {
        const std::vector<double> su = gather(ctx.stock_returns[n], up);
        const std::vector<double> iu = gather(ctx.loo_returns[n], up);
        const std::vector<double> sd = gather(ctx.stock_returns[n], down);
        const std::vector<double> id = gather(ctx.loo_returns[n], down);
        m.mean_mi_up += plugin_mutual_information(su, iu, opts.binning);
        m.mean_mi_down += plugin_mutual_information(sd, id, opts.binning);
        m.mean_corr_up += pearson_correlation(su, iu);
        m.mean_corr_down += pearson_correlation(sd, id);
    }
    m.mean_mi_up /= static_cast<double>(N);
    m.mean_mi_down /= static_cast<double>(N);
    m.mean_corr_up /= static_cast<double>(N);
    m.mean_corr_down /= static_cast<double>(N);
    return m;
}

} // namespace detail

inline DependenceMeasures mean_dependence(const PricePanel& panel, std::int64_t L,
                                          const DependenceOptions& opts = {}) {
    return detail::mean_dependence_impl(detail::make_dependence_context(panel), L, opts);
}

/// One row per requested window length; rows whose U/D sets are too small
/// stay in the report marked infeasible with the reason.
struct DependenceRow {
    std::int64_t L = 0;
    bool feasible = false;
    DependenceMeasures measures{};
    std::string skip_reason;
};

struct DependenceReport {
    std::vector<DependenceRow> rows;
};

inline DependenceReport dependence_sweep(const PricePanel& panel,
                                         const std::vector<std::int64_t>& window_lengths,
                                         const DependenceOptions& opts = {}) {
    DependenceReport report;
    if (window_lengths.empty()) return report;
    const detail::dependence_context ctx = detail::make_dependence_context(panel);
    for (const std::int64_t L : window_lengths) {
        DependenceRow row;
        row.L = L;
        try {
            row.measures = detail::mean_dependence_impl(ctx, L, opts);
            row.feasible = true;
        } catch (const numeric_error& e) {
            row.skip_reason = e.what();
        } catch (const validation_error& e) {
            row.skip_reason = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// Default window-length sweep: 5, 10, ..., 100 days.
inline std::vector<std::int64_t> default_window_lengths() {
    std::vector<std::int64_t> ls;
    for (std::int64_t L = 5; L <= 100; L += 5) ls.push_back(L);
    return ls;
}

} // namespace invstat

#endif
