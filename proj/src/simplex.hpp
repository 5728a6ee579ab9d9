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

#pragma once

#include <vector>

namespace nsbox::detail {

/// Result of the L1 feasibility problem
///
///     minimize  sum(s+) + sum(s-)   subject to   V w + s+ - s- = p,   w, s+, s- >= 0.
///
/// `weights` is the optimal w. `dual` is an optimal y of the dual problem
///
///     maximize  p.y   subject to   V^T y <= 0,   -1 <= y <= 1,
///
/// so a positive objective means p.y > 0 >= v.y for every column v.
struct L1FitResult {
    bool converged = false;
    double objective = 0.0;
    std::vector<double> weights;
    std::vector<double> dual;
    std::vector<int> support;  // columns of V that are basic at the optimum
};

/// Dense tableau simplex. `columns[j]` is column j of V; every column and `target` have the same length.
L1FitResult solve_l1_fit(const std::vector<std::vector<double>> &columns, const std::vector<double> &target);

}  // namespace nsbox::detail
