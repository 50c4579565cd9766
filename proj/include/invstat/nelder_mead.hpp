#ifndef INVSTAT_NELDER_MEAD_HPP
#define INVSTAT_NELDER_MEAD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "invstat/errors.hpp"

namespace invstat {

struct NelderMeadOptions {
    int max_evaluations = 2000;
    /// Converged when max_i ||x_i - x_best||_inf / max(1, ||x_best||_inf) drops below this.
    double relative_diameter_tol = 1e-8;
    /// Per-coordinate offsets spanning the initial simplex around the start point.
    std::vector<double> initial_step;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Downhill simplex minimization (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Derivative-free; the objective may return +inf to veto a
/// region.
template <class F>
NelderMeadResult nelder_mead_minimize(F&& objective, const std::vector<double>& start,
                                      const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    if (dim == 0) throw validation_error("nelder_mead: empty start point");
    if (options.initial_step.size() != dim)
        throw validation_error("nelder_mead: initial_step size must match dimension");

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = objective(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> vertex(dim + 1, start);
    std::vector<double> value(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) vertex[i + 1][i] += options.initial_step[i];
    for (std::size_t i = 0; i <= dim; ++i) value[i] = eval(vertex[i]);

    std::vector<std::size_t> order(dim + 1);
    auto sort_order = [&] {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    };
    auto diameter_converged = [&] {
        const auto& best = vertex[order[0]];
        double scale = 1.0;
        for (double c : best) scale = std::max(scale, std::fabs(c));
        double diam = 0.0;
        for (std::size_t i = 1; i <= dim; ++i)
            for (std::size_t c = 0; c < dim; ++c)
                diam = std::max(diam, std::fabs(vertex[order[i]][c] - best[c]));
        return diam / scale < options.relative_diameter_tol;
    };

    bool converged = false;
    sort_order();
    while (evals < options.max_evaluations) {
        if (diameter_converged()) {
            converged = true;
            break;
        }
        const std::size_t worst = order[dim];
        const std::size_t second_worst = order[dim - 1];
        const std::size_t best = order[0];

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t c = 0; c < dim; ++c) centroid[c] += vertex[order[i]][c];
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto along = [&](double factor) {
            std::vector<double> p(dim);
            for (std::size_t c = 0; c < dim; ++c)
                p[c] = centroid[c] + factor * (vertex[worst][c] - centroid[c]);
            return p;
        };

        const std::vector<double> reflected = along(-1.0);
        const double f_reflected = eval(reflected);

        if (f_reflected < value[best]) {
            const std::vector<double> expanded = along(-2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                vertex[worst] = expanded;
                value[worst] = f_expanded;
            } else {
                vertex[worst] = reflected;
                value[worst] = f_reflected;
            }
        } else if (f_reflected < value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < value[worst];
            const std::vector<double> contracted = along(outside ? -0.5 : 0.5);
            const double f_contracted = eval(contracted);
            if (f_contracted < std::min(f_reflected, value[worst])) {
                vertex[worst] = contracted;
                value[worst] = f_contracted;
            } else {
                // shrink everything toward the best vertex
                for (std::size_t i = 1; i <= dim; ++i) {
                    const std::size_t v = order[i];
                    for (std::size_t c = 0; c < dim; ++c)
                        vertex[v][c] = vertex[best][c] + 0.5 * (vertex[v][c] - vertex[best][c]);
                    value[v] = eval(vertex[v]);
                    if (evals >= options.max_evaluations) break;
                }
            }
        }
        sort_order();
    }

    sort_order();
    NelderMeadResult result;
    result.x = vertex[order[0]];
    result.fx = value[order[0]];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

} // namespace invstat

#endif
