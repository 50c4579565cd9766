#ifndef INVSTAT_FIRST_PASSAGE_HPP
#define INVSTAT_FIRST_PASSAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/series.hpp"

namespace invstat {

/// Log-return level rho whose first crossing is being timed. Positive rho
/// waits for an upward move of at least rho, negative rho for a downward
/// move of at most rho.
struct Barrier {
    double rho;

    explicit Barrier(double r) : rho(r) {
        if (!std::isfinite(rho) || rho == 0.0)
            throw validation_error("barrier level must be finite and nonzero");
    }
    bool upward() const { return rho > 0.0; }
};

/// Observed first-passage waits for one barrier. waits is ordered by start
/// time; starts with no crossing before the series ends are censored.
struct FptSamples {
    double rho = 0.0;
    std::vector<std::int64_t> waits;
    std::int64_t starts_total = 0;
    std::int64_t starts_censored = 0;
};

namespace detail {

// Segment tree over the log-price path answering "first index >= from whose
// value reaches a threshold" in O(log T). Max tree for upward barriers,
// min tree for downward ones.
class crossing_scanner {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    crossing_scanner(const std::vector<double>& values, bool upward) : upward_(upward) {
        n_ = values.size();
        leaves_ = 1;
        while (leaves_ < n_) leaves_ <<= 1;
        const double pad = upward_ ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
        nodes_.assign(2 * leaves_, pad);
        std::copy(values.begin(), values.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(leaves_));
        for (std::size_t i = leaves_ - 1; i >= 1; --i)
            nodes_[i] = upward_ ? std::max(nodes_[2 * i], nodes_[2 * i + 1])
                                : std::min(nodes_[2 * i], nodes_[2 * i + 1]);
    }

    /// Smallest index u >= from with value[u] >= threshold (upward) or
    /// value[u] <= threshold (downward); npos when no such index exists.
    std::size_t first_crossing(std::size_t from, double threshold) const {
        if (from >= n_) return npos;
        return descend(1, 0, leaves_, from, threshold);
    }

private:
    bool reaches(double v, double threshold) const {
        return upward_ ? v >= threshold : v <= threshold;
    }

    std::size_t descend(std::size_t node, std::size_t lo, std::size_t hi, std::size_t from,
                        double threshold) const {
        if (hi <= from || !reaches(nodes_[node], threshold)) return npos;
        if (node >= leaves_) return lo;
        const std::size_t mid = lo + (hi - lo) / 2;
        const std::size_t left = descend(2 * node, lo, mid, from, threshold);
        if (left != npos) return left;
        return descend(2 * node + 1, mid, hi, from, threshold);
    }

    std::size_t n_ = 0;
    std::size_t leaves_ = 1;
    bool upward_;
    std::vector<double> nodes_;
};

} // namespace detail

/// First passage times of the barrier from every start t in {0, ..., T-1}:
/// the smallest s >= 1 with log(I_{t+s}) - log(I_t) >= rho (rho > 0), or
/// <= rho (rho < 0). Starts that never cross are censored, not sampled.
inline FptSamples first_passage_times(const PriceSeries& prices, const Barrier& barrier) {
    const std::size_t T = prices.days();
    std::vector<double> log_price(prices.size());
    for (std::size_t u = 0; u < prices.size(); ++u) log_price[u] = std::log(prices[u]);

    const detail::crossing_scanner scanner(log_price, barrier.upward());
    FptSamples out;
    out.rho = barrier.rho;
    out.starts_total = static_cast<std::int64_t>(T);
    out.waits.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t u = scanner.first_crossing(t + 1, log_price[t] + barrier.rho);
        if (u == detail::crossing_scanner::npos)
            ++out.starts_censored;
        else
            out.waits.push_back(static_cast<std::int64_t>(u - t));
    }
    return out;
}

/// Normalized histogram of waits on integer support 1..t_max. Mass is the
/// fraction of all observed waits, so it sums to 1 unless t_max truncates
/// the sample, which is flagged.
struct EmpiricalPmf {
    std::int64_t t_max = 0;
    std::vector<double> mass; // mass[t] for t in 1..t_max; mass[0] unused
    std::int64_t n_samples = 0;
    bool truncated = false;
    std::int64_t truncated_samples = 0;

    double at(std::int64_t t) const {
        return (t >= 1 && t <= t_max) ? mass[static_cast<std::size_t>(t)] : 0.0;
    }
    std::int64_t positive_support_points() const {
        std::int64_t k = 0;
        for (std::int64_t t = 1; t <= t_max; ++t)
            if (mass[static_cast<std::size_t>(t)] > 0.0) ++k;
        return k;
    }
};

/// Empirical distribution of the waits. t_max = 0 extends the support to the
/// largest observed wait; a smaller explicit t_max truncates and flags it.
inline EmpiricalPmf empirical_pmf(const FptSamples& samples, std::int64_t t_max = 0) {
    if (samples.waits.empty())
        throw numeric_error("no crossings for barrier rho=" + std::to_string(samples.rho));
    const std::int64_t observed_max = *std::max_element(samples.waits.begin(), samples.waits.end());
    if (t_max == 0) t_max = observed_max;
    if (t_max < 1) throw validation_error("t_max must be positive");

    EmpiricalPmf pmf;
    pmf.t_max = t_max;
    pmf.n_samples = static_cast<std::int64_t>(samples.waits.size());
    pmf.mass.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
    for (const std::int64_t w : samples.waits) {
        if (w > t_max)
            ++pmf.truncated_samples;
        else
            pmf.mass[static_cast<std::size_t>(w)] += 1.0;
    }
    pmf.truncated = pmf.truncated_samples > 0;
    for (double& m : pmf.mass) m /= static_cast<double>(pmf.n_samples);
    return pmf;
}

/// Smallest support point attaining the maximal mass.
inline std::int64_t empirical_mode(const EmpiricalPmf& pmf) {
    std::int64_t best_t = 0;
    double best_mass = 0.0;
    for (std::int64_t t = 1; t <= pmf.t_max; ++t) {
        const double m = pmf.mass[static_cast<std::size_t>(t)];
        if (m > best_mass) {
            best_mass = m;
            best_t = t;
        }
    }
    if (best_t == 0) throw numeric_error("empirical mode undefined: pmf has no mass");
    return best_t;
}

/// Pointwise average of several pmfs, support extended to the widest one.
/// Used to pool first-passage distributions over scramble replicates.
inline EmpiricalPmf average_pmfs(const std::vector<EmpiricalPmf>& pmfs) {
    if (pmfs.empty()) throw validation_error("cannot average zero pmfs");
    EmpiricalPmf out;
    for (const auto& p : pmfs) {
        out.t_max = std::max(out.t_max, p.t_max);
        out.n_samples += p.n_samples;
        out.truncated = out.truncated || p.truncated;
        out.truncated_samples += p.truncated_samples;
    }
    out.mass.assign(static_cast<std::size_t>(out.t_max) + 1, 0.0);
    for (const auto& p : pmfs)
        for (std::int64_t t = 1; t <= p.t_max; ++t)
            out.mass[static_cast<std::size_t>(t)] += p.mass[static_cast<std::size_t>(t)];
    for (double& m : out.mass) m /= static_cast<double>(pmfs.size());
    return out;
}

struct AsymmetryOptions {
    std::int64_t min_crossings = 30;
};

/// Gain/loss asymmetry summary: empirical_mode(+rho) - empirical_mode(-rho).
/// Positive values mean losses of size rho are typically reached faster than
/// gains of the same size. This scalar is a toolkit convention, not a
/// standard statistic.
inline double asymmetry_stat(const PriceSeries& prices, double rho_abs,
                             const AsymmetryOptions& opts = {}) {
    if (!(rho_abs > 0.0) || !std::isfinite(rho_abs))
        throw validation_error("rho_abs must be positive and finite");
    const FptSamples up = first_passage_times(prices, Barrier(rho_abs));
    const FptSamples down = first_passage_times(prices, Barrier(-rho_abs));
    for (const FptSamples* s : {&up, &down}) {
        if (static_cast<std::int64_t>(s->waits.size()) < opts.min_crossings)
            throw numeric_error("barrier rho=" + std::to_string(s->rho) + ": only " +
                                std::to_string(s->waits.size()) + " crossings, need >= " +
                                std::to_string(opts.min_crossings));
    }
    const std::int64_t mode_up = empirical_mode(empirical_pmf(up));
    const std::int64_t mode_down = empirical_mode(empirical_pmf(down));
    return static_cast<double>(mode_up - mode_down);
}

} // namespace invstat

#endif
