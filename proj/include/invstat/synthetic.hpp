#ifndef INVSTAT_SYNTHETIC_HPP
#define INVSTAT_SYNTHETIC_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/index.hpp"
#include "invstat/rng.hpp"
#include "invstat/series.hpp"

namespace invstat {

/// Geometric Brownian motion on a daily grid: i.i.d. Gaussian log returns.
/// Serves as the no-temporal-structure null model.
struct GbmSpec {
    double mu = 0.0;
    double sigma = 0.01;
    std::int64_t days = 100000;
    std::uint64_t seed = 1;
};

inline PriceSeries generate_gbm(const GbmSpec& spec) {
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma))
        throw validation_error("gbm: sigma must be nonnegative and finite");
    if (!std::isfinite(spec.mu)) throw validation_error("gbm: mu must be finite");
    if (spec.days < 1) throw validation_error("gbm: days must be >= 1");
    rng_engine eng(spec.seed);
    normal_sampler normals(eng);
    std::vector<double> returns(static_cast<std::size_t>(spec.days));
    for (double& r : returns) r = spec.mu + spec.sigma * normals.next();
    return reconstruct(ReturnSeries(std::move(returns), 1.0, "gbm"));
}

/// Two-state market with equicorrelated stocks: an up regime with mild drift
/// and weak cross-correlation, and a downturn regime with negative drift and
/// strong cross-correlation. Regime durations are geometric. The cross
/// section is one common factor plus idiosyncratic noise, which pins the
/// pairwise return correlation at exactly rho for the active regime.
struct RegimeSpec {
    std::int64_t stocks = 12;
    std::int64_t days = 100000;
    double p_down = 0.02;             // daily chance the up regime flips down
    double regime_mean_length = 20.0; // mean downturn length, days
    double rho_up = 0.1;
    double rho_down = 0.6;
    double drift_up = 4e-4;
    double drift_down = -8e-4;
    double sigma = 0.01;
    std::uint64_t seed = 1;
};

/// Panel plus the regime path that generated it (1 = downturn, per return
/// day). The regime path exists for diagnostics and tests; analyses must not
/// peek at it.
struct RegimePanel {
    PricePanel panel;
    std::vector<std::uint8_t> down_regime;
};

inline RegimePanel generate_regime_panel(const RegimeSpec& spec) {
    if (spec.stocks < 2) throw validation_error("regime panel: stocks must be >= 2");
    if (spec.days < 1) throw validation_error("regime panel: days must be >= 1");
    // The spec allows rho_up == rho_down: that is the uncoupled null
    // configuration used by the surrogate tests.
    if (!(0.0 <= spec.rho_up && spec.rho_up <= spec.rho_down && spec.rho_down <= 1.0))
        throw validation_error("regime panel: need 0 <= rho_up <= rho_down <= 1");
    if (!(spec.regime_mean_length >= 1.0))
        throw validation_error("regime panel: regime_mean_length must be >= 1");
    if (!(0.0 <= spec.p_down && spec.p_down <= 1.0))
        throw validation_error("regime panel: p_down must be in [0, 1]");
    if (!(spec.sigma >= 0.0)) throw validation_error("regime panel: sigma must be >= 0");

    const std::size_t N = static_cast<std::size_t>(spec.stocks);
    const std::size_t T = static_cast<std::size_t>(spec.days);
    rng_engine eng(spec.seed);
    normal_sampler normals(eng);

    std::vector<std::vector<double>> prices(N, std::vector<double>(T + 1, 1.0));
    std::vector<double> log_price(N, 0.0);
    std::vector<std::uint8_t> regime(T, 0);

    const double up_exit = spec.p_down;
    const double down_exit = 1.0 / spec.regime_mean_length;
    const double load_up = std::sqrt(spec.rho_up);
    const double resid_up = std::sqrt(1.0 - spec.rho_up);
    const double load_down = std::sqrt(spec.rho_down);
    const double resid_down = std::sqrt(1.0 - spec.rho_down);

    bool down = false;
    for (std::size_t t = 0; t < T; ++t) {
        const double u = uniform_unit(eng);
        if (!down && u < up_exit) down = true;
        else if (down && u < down_exit) down = false;
        regime[t] = down ? 1 : 0;

        const double drift = down ? spec.drift_down : spec.drift_up;
        const double load = down ? load_down : load_up;
        const double resid = down ? resid_down : resid_up;
        const double common = normals.next();
        for (std::size_t n = 0; n < N; ++n) {
            const double ret = drift + spec.sigma * (load * common + resid * normals.next());
            log_price[n] += ret;
            prices[n][t + 1] = std::exp(log_price[n]);
        }
    }

    std::vector<std::string> names(N);
    for (std::size_t n = 0; n < N; ++n) {
        std::string id = std::to_string(n + 1);
        while (id.size() < std::to_string(N).size()) id.insert(id.begin(), '0');
        names[n] = "S" + id;
    }
    return RegimePanel{PricePanel(std::move(names), std::move(prices)), std::move(regime)};
}

} // namespace invstat

#endif
