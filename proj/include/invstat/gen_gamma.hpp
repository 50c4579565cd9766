#ifndef INVSTAT_GEN_GAMMA_HPP
#define INVSTAT_GEN_GAMMA_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/first_passage.hpp"
#include "invstat/nelder_mead.hpp"
#include "invstat/rng.hpp"

namespace invstat {

/// Shifted generalized gamma density
///   f(t) = p / (a^d Gamma(d/p)) * (t-t0)^(d-1) * exp(-((t-t0)/a)^p),  t > t0,
/// with scale a > 0, shapes d, p > 0 and support shift t0 >= 0.
/// d = p = 1 is the exponential; p = 1 the ordinary gamma.
struct GenGammaParams {
    double a = 1.0;
    double d = 1.0;
    double p = 1.0;
    double t0 = 0.0;
};

inline double gen_gamma_pdf(double t, const GenGammaParams& g) {
    if (t <= g.t0) return 0.0;
    const double x = t - g.t0;
    const double log_f = std::log(g.p) - g.d * std::log(g.a) - std::lgamma(g.d / g.p) +
                         (g.d - 1.0) * std::log(x) - std::pow(x / g.a, g.p);
    return std::exp(log_f);
}

/// Density argmax: t0 + a ((d-1)/p)^(1/p) for d > 1, else the left edge t0
/// (the density is decreasing).
inline double gen_gamma_mode(const GenGammaParams& g) {
    if (g.d > 1.0) return g.t0 + g.a * std::pow((g.d - 1.0) / g.p, 1.0 / g.p);
    return g.t0;
}

namespace detail {

template <class F>
double adaptive_simpson_step(F& f, double lo, double hi, double f_lo, double f_mid, double f_hi,
                             double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double f_lmid = f(lmid);
    const double f_rmid = f(rmid);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lmid + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rmid + f_hi);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_step(f, lo, mid, f_lo, f_lmid, f_mid, left, tol / 2.0, depth - 1) +
           adaptive_simpson_step(f, mid, hi, f_mid, f_rmid, f_hi, right, tol / 2.0, depth - 1);
}

template <class F>
double adaptive_simpson(F f, double lo, double hi, double tol, int depth = 48) {
    const double mid = 0.5 * (lo + hi);
    const double f_lo = f(lo);
    const double f_mid = f(mid);
    const double f_hi = f(hi);
    const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    return adaptive_simpson_step(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, depth);
}

} // namespace detail

/// Quadrature of the density over (t0, inf). Exact normalization gives 1;
/// this is a numeric check of the implemented form. Substituting
/// u = ((t-t0)/a)^p turns the integral into a Gamma(d/p) law in u, which is
/// integrated as 1/s * exp(-w^(1/s)) on w = u^s in [0,1] (tames the d/p < 1
/// singularity) plus the regular piece on u in [1, upper].
inline double gen_gamma_normalization(const GenGammaParams& g, double tol = 1e-9) {
    const double s = g.d / g.p;
    const double inv_gamma = std::exp(-std::lgamma(s));
    const double near = detail::adaptive_simpson(
        [&](double w) { return std::exp(-std::pow(w, 1.0 / s)) / s; }, 0.0, 1.0, tol);
    const double upper = s + 45.0 * std::sqrt(s + 1.0) + 45.0;
    const double far = detail::adaptive_simpson(
        [&](double u) { return std::exp((s - 1.0) * std::log(u) - u); }, 1.0, upper, tol);
    return (near + far) * inv_gamma;
}

/// Weighted-least-squares fit of the generalized gamma density to an
/// empirical first-passage pmf.
struct GenGammaFit {
    GenGammaParams params;
    double objective = std::numeric_limits<double>::infinity();
    bool converged = false;
};

struct GenGammaFitOptions {
    int restarts = 3;            // jittered restarts after the documented start
    int max_evaluations = 2000;  // per optimizer run
    double diameter_tol = 1e-8;
    std::int64_t min_support_points = 8;
    std::uint64_t jitter_seed = 0x1f2e3d4c5b6a7988ULL; // fixed: fits are deterministic
};

/// Fit by minimizing sum_t m_t (f(t) - m_t)^2 over support points with
/// positive mass m_t. Search runs in (log a, log d, log p, t0) via
/// Nelder-Mead from the start (a = pmf mean, d = 2, p = 1, t0 = 0), followed
/// by jittered restarts; the best run wins. Optimizer trouble is reported
/// through converged=false, never an exception.
inline GenGammaFit fit_gen_gamma(const EmpiricalPmf& pmf, const GenGammaFitOptions& opts = {}) {
    std::vector<double> ts, ms;
    for (std::int64_t t = 1; t <= pmf.t_max; ++t) {
        const double m = pmf.mass[static_cast<std::size_t>(t)];
        if (m > 0.0) {
            ts.push_back(static_cast<double>(t));
            ms.push_back(m);
        }
    }
    if (static_cast<std::int64_t>(ts.size()) < opts.min_support_points)
        throw validation_error("gen-gamma fit needs >= " + std::to_string(opts.min_support_points) +
                               " support points with positive mass, got " +
                               std::to_string(ts.size()));

    double mean = 0.0, total = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mean += ts[i] * ms[i];
        total += ms[i];
    }
    mean /= total;

    const auto unpack = [](const std::vector<double>& x) {
        return GenGammaParams{std::exp(x[0]), std::exp(x[1]), std::exp(x[2]), x[3]};
    };
    const auto objective = [&](const std::vector<double>& x) {
        if (x[3] < 0.0) return std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < 3; ++c)
            if (std::fabs(x[c]) > 30.0) return std::numeric_limits<double>::infinity();
        const GenGammaParams g = unpack(x);
        double loss = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double r = gen_gamma_pdf(ts[i], g) - ms[i];
            loss += ms[i] * r * r;
        }
        return std::isfinite(loss) ? loss : std::numeric_limits<double>::infinity();
    };

    NelderMeadOptions nm;
    nm.max_evaluations = opts.max_evaluations;
    nm.relative_diameter_tol = opts.diameter_tol;
    nm.initial_step = {0.3, 0.3, 0.3, 0.25};

    const std::vector<double> start{std::log(mean), std::log(2.0), 0.0, 0.0};
    rng_engine jitter(opts.jitter_seed);

    GenGammaFit best;
    for (int run = 0; run <= opts.restarts; ++run) {
        std::vector<double> x0 = start;
        if (run > 0) {
            for (std::size_t c = 0; c < 3; ++c) x0[c] += uniform_unit(jitter) - 0.5;
            x0[3] += 0.5 * uniform_unit(jitter); // keep the shift nonnegative
        }
        const NelderMeadResult r = nelder_mead_minimize(objective, x0, nm);
        if (r.fx < best.objective) {
            best.params = unpack(r.x);
            best.objective = r.fx;
            best.converged = r.converged;
        }
    }
    return best;
}

/// Fitted and empirical most likely first passage times. The fitted mode is
/// absent when the optimizer did not converge.
struct ModeEstimates {
    std::optional<double> fitted;
    std::int64_t empirical = 0;
};

inline ModeEstimates most_likely_time(const GenGammaFit& fit, const EmpiricalPmf& pmf) {
    ModeEstimates m;
    m.empirical = empirical_mode(pmf);
    if (fit.converged) m.fitted = gen_gamma_mode(fit.params);
    return m;
}

} // namespace invstat

#endif
