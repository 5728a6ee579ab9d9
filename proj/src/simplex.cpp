// Copyright 2026 The nsbox Authors
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

#include "simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace nsbox::detail {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kCostEps = 1e-11;
constexpr int kStallLimit = 50;

}  // namespace

L1FitResult solve_l1_fit(const std::vector<std::vector<double>> &columns, const std::vector<double> &target) {
    const std::size_t m = target.size();
    const std::size_t nv = columns.size();
    const std::size_t n = nv + 2 * m;  // w, s+, s-
    const std::size_t width = n + 1;   // plus right-hand side

    std::vector<double> sign(m);
    std::vector<double> tab(m * width, 0.0);
    auto cell = [&](std::size_t i, std::size_t j) -> double & { return tab[i * width + j]; };

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        sign[i] = target[i] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < nv; ++j) {
            cell(i, j) = sign[i] * columns[j][i];
        }
        cell(i, nv + i) = sign[i];
        cell(i, nv + m + i) = -sign[i];
        cell(i, n) = sign[i] * target[i];
        basis[i] = sign[i] > 0 ? nv + i : nv + m + i;
    }

    // Reduced costs with all slacks basic at cost 1; the last slot holds -objective.
    std::vector<double> cost(width, 0.0);
    for (std::size_t j = nv; j < n; ++j) {
        cost[j] = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            cost[j] -= cell(i, j);
        }
    }

    L1FitResult result;
    const std::size_t max_iter = 100 * (m + n) + 1000;
    bool bland = false;
    int stall = 0;
    double last_objective = -cost[n];

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::size_t enter = n;
        double best = -kCostEps;
        for (std::size_t j = 0; j < n; ++j) {
            if (cost[j] < best) {
                enter = j;
                if (bland) {
                    break;
                }
                best = cost[j];
            }
        }
        if (enter == n) {
            result.converged = true;
            break;
        }

        std::size_t leave = m;
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = cell(i, enter);
            if (a > kPivotEps) {
                const double r = cell(i, n) / a;
                if (r < ratio - 1e-12 || (std::fabs(r - ratio) <= 1e-12 && leave < m && basis[i] < basis[leave])) {
                    ratio = r;
                    leave = i;
                }
            }
        }
        if (leave == m) {
            // Unbounded cannot happen for a non-negative objective; treat as numerical failure.
            break;
        }

        const double pivot = cell(leave, enter);
        for (std::size_t j = 0; j < width; ++j) {
            cell(leave, j) /= pivot;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) {
                continue;
            }
            const double f = cell(i, enter);
            if (f != 0.0) {
                for (std::size_t j = 0; j < width; ++j) {
                    cell(i, j) -= f * cell(leave, j);
                }
                cell(i, enter) = 0.0;
            }
        }
        const double f = cost[enter];
        for (std::size_t j = 0; j < width; ++j) {
            cost[j] -= f * cell(leave, j);
        }
        cost[enter] = 0.0;
        basis[leave] = enter;

        const double objective = -cost[n];
        if (objective < last_objective - 1e-14) {
            stall = 0;
            last_objective = objective;
        } else if (++stall > kStallLimit) {
            bland = true;
        }
    }

    result.objective = -cost[n];
    result.weights.assign(nv, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < nv) {
            result.weights[basis[i]] = std::max(0.0, cell(i, n));
            result.support.push_back(static_cast<int>(basis[i]));
        }
    }
    result.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t initial = sign[i] > 0 ? nv + i : nv + m + i;
        result.dual[i] = sign[i] * (1.0 - cost[initial]);
    }
    return result;
}

}  // namespace nsbox::detail
