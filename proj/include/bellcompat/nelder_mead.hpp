// Copyright 2026 The bellcompat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace bellcompat {

struct NelderMeadOptions {
    double initial_step = 0.5;
    /// Stop once every vertex lies within this distance of the best one.
    double diameter_tol = 1e-9;
    int max_iter = 5000;
};

template <std::size_t N>
struct NelderMeadResult {
    std::array<double, N> x{};
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Minimizes f: R^N -> R with the Nelder-Mead downhill simplex
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <std::size_t N, class F>
NelderMeadResult<N> nelder_mead_minimize(F &&f, const std::array<double, N> &start, const NelderMeadOptions &opt = {}) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> simplex;
    std::array<double, N + 1> values;
    simplex[0] = start;
    for (std::size_t i = 0; i < N; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1][i] += opt.initial_step;
    }
    for (std::size_t i = 0; i <= N; ++i) {
        values[i] = f(simplex[i]);
    }

    std::array<std::size_t, N + 1> order;
    auto diameter = [&](std::size_t best) {
        double d = 0.0;
        for (std::size_t i = 0; i <= N; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                const double dx = simplex[i][k] - simplex[best][k];
                s += dx * dx;
            }
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };
    auto along = [](const Point &from, const Point &to, double t) {
        Point p;
        for (std::size_t k = 0; k < N; ++k) {
            p[k] = from[k] + t * (to[k] - from[k]);
        }
        return p;
    };

    NelderMeadResult<N> out;
    int iter = 0;
    for (;; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[N];
        const std::size_t second_worst = order[N - 1];
        if (diameter(best) < opt.diameter_tol) {
            out.converged = true;
            break;
        }
        if (iter >= opt.max_iter) {
            break;
        }

        Point centroid{};
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < N; ++k) {
                centroid[k] += simplex[i][k] / static_cast<double>(N);
            }
        }

        const Point reflected = along(simplex[worst], centroid, 2.0);
        const double f_reflected = f(reflected);
        if (f_reflected < values[best]) {
            const Point expanded = along(simplex[worst], centroid, 3.0);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        const bool outside = f_reflected < values[worst];
        const Point contracted = outside ? along(centroid, reflected, 0.5) : along(centroid, simplex[worst], 0.5);
        const double f_contracted = f(contracted);
        if (f_contracted < std::min(f_reflected, values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }

        for (std::size_t i = 0; i <= N; ++i) {
            if (i == best) {
                continue;
            }
            simplex[i] = along(simplex[best], simplex[i], 0.5);
            values[i] = f(simplex[i]);
        }
    }

    const std::size_t best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    out.x = simplex[best];
    out.f = values[best];
    out.iterations = iter;
    return out;
}

}  // namespace bellcompat
