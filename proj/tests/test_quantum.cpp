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

#include <gtest/gtest.h>

#include "nsbox/classical.hpp"
#include "nsbox/gallery.hpp"
#include "nsbox/locality.hpp"
#include "nsbox/quantum.hpp"

using namespace nsbox;

TEST(Lift, NegativeStatePr) {
    QuantumModel q = lift(build_negative_state(pr_box()));
    EXPECT_EQ(q.dimension(), 25u);
    const auto &basis = q.bases[0];
    int xi = -1, l11 = -1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i] == HiddenLabel::xi()) xi = static_cast<int>(i);
        if (basis[i] == HiddenLabel::pair(0, 0)) l11 = static_cast<int>(i);
    }
    EXPECT_EQ(q.state.diag[static_cast<std::size_t>(xi * 5 + l11)], ratio(-1, 2));
    EXPECT_EQ(q.state.trace(), 1);

    QuantumReport r = verify(q);
    EXPECT_TRUE(r.well_formed());
    EXPECT_TRUE(r.measurements_projective);
    EXPECT_FALSE(r.state_positive);
    EXPECT_EQ(r.state_min, ratio(-1, 2));
    EXPECT_FALSE(r.fully_positive());
    EXPECT_EQ(evaluate_trace(q), pr_box());
}

TEST(Lift, NegativeMeasurementsPr) {
    QuantumModel q = lift(build_negative_measurements(pr_box()));
    EXPECT_EQ(q.dimension(), 16u);
    for (int x = 0; x < 2; ++x) {
        const auto &m = q.measurements[0][static_cast<std::size_t>(x)][1];
        int pair_index = -1;
        for (std::size_t i = 0; i < q.bases[0].size(); ++i) {
            if (q.bases[0][i] == HiddenLabel::pair(0, x)) pair_index = static_cast<int>(i);
        }
        EXPECT_EQ(m.diag[static_cast<std::size_t>(pair_index)], Rational(-1));
    }
    QuantumReport r = verify(q);
    EXPECT_TRUE(r.well_formed());
    EXPECT_TRUE(r.state_positive);
    EXPECT_FALSE(r.measurements_positive);
    EXPECT_EQ(r.measurement_min, Rational(-1));
    EXPECT_EQ(evaluate_trace(q), pr_box());
}

TEST(Lift, CompressedDimension) {
    QuantumModel q = lift(compress(build_negative_state(tsirelson_box())));
    EXPECT_EQ(q.dimension(), 9u);
    EXPECT_TRUE(verify(q).well_formed());
    EXPECT_EQ(evaluate_trace(q), tsirelson_box());
}

TEST(Lift, DeterministicBoxStillHasNegativeState) {
    Scenario s({2, 2}, {2, 2});
    for (const auto &v : enumerate_vertices(s)) {
        Box b = deterministic_box(s, v);
        QuantumReport r = verify(lift(build_negative_state(b)));
        EXPECT_TRUE(r.well_formed());
        EXPECT_GT(r.state_negative_count, 0u) << v.to_string();
    }
}

TEST(EvaluateTrace, SingleOutcomeScenarioIsConstant) {
    Scenario s({1, 1}, {2, 3});
    Box b = uniform_box(s);
    QuantumModel q = lift(build_negative_state(b));
    Box out = evaluate_trace(q);
    for (std::size_t xi = 0; xi < s.input_tuples().size(); ++xi) {
        EXPECT_EQ(out.at(0, xi), 1);
    }
}

TEST(Verify, ReportsBrokenModelsWithoutThrowing) {
    QuantumModel q = lift(build_negative_measurements(pr_box()));
    q.measurements[1][0][0].diag[0] += 1;
    q.state.diag[0] += 1;
    QuantumReport r = verify(q);
    EXPECT_FALSE(r.complete());
    EXPECT_FALSE(r.trace_one());
    EXPECT_FALSE(r.well_formed());
    EXPECT_EQ(r.completeness_failures[0].party, 1);

    q.state.diag.pop_back();
    QuantumReport shape = verify(q);
    EXPECT_FALSE(shape.shape_error.empty());
    EXPECT_FALSE(shape.well_formed());
}
