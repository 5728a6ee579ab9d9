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

// Born-rule oracle: maximally entangled two-qubit state with A in {Z, X} and
// B in {(Z+X)/sqrt2, (Z-X)/sqrt2}; p(a,b|x,y) = <phi| P_a^x (x) Q_b^y |phi>.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

#include "nsbox/gallery.hpp"
#include "nsbox/locality.hpp"

using namespace nsbox;

namespace {

Eigen::Matrix2d projector(const Eigen::Matrix2d &observable, int outcome) {
    const double sign = outcome == 0 ? 1.0 : -1.0;
    return 0.5 * (Eigen::Matrix2d::Identity() + sign * observable);
}

}  // namespace

TEST(TsirelsonOracle, EntriesMatchBornRule) {
    Eigen::Matrix2d z, x;
    z << 1, 0, 0, -1;
    x << 0, 1, 1, 0;
    const double r = 1.0 / std::sqrt(2.0);
    const Eigen::Matrix2d alice[2] = {z, x};
    const Eigen::Matrix2d bob[2] = {r * (z + x), r * (z - x)};
    Eigen::Vector4d phi(r, 0, 0, r);

    Box t = tsirelson_box();
    double chsh = 0;
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            for (int a1 = 0; a1 < 2; ++a1) {
                for (int a2 = 0; a2 < 2; ++a2) {
                    Eigen::Matrix4d op = Eigen::kroneckerProduct(projector(alice[x1], a1), projector(bob[x2], a2));
                    const double p = phi.dot(op * phi);
                    std::vector<int> a{a1, a2}, xs{x1, x2};
                    EXPECT_NEAR(to_double(t(a, xs)), p, 1e-12);
                    const double sign = (x1 == 1 && x2 == 1) ? -1.0 : 1.0;
                    chsh += sign * (a1 == a2 ? 1.0 : -1.0) * p;
                }
            }
        }
    }
    EXPECT_NEAR(chsh, 2 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(to_double(bell_value(t, chsh_functional())), chsh, 1e-9);
}
