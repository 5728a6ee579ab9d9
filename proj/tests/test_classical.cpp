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

#include <cmath>

#include "corpus.hpp"
#include "nsbox/classical.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/gallery.hpp"

using namespace nsbox;

namespace {

int label_index(const LabelSpace &space, const HiddenLabel &label) {
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i] == label) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace

TEST(HiddenLabel, ParseRoundTrip) {
    for (const auto &l : {HiddenLabel::pair(0, 0), HiddenLabel::pair(2, 11), HiddenLabel::xi(), HiddenLabel::eta()}) {
        EXPECT_EQ(HiddenLabel::parse(l.to_string()), l);
    }
    for (const char *bad : {"[1,1", "[0,1]", "[1,]", "[a,1]", "[1,1]x", "[1,1,1]", "eta ", ""}) {
        EXPECT_THROW(HiddenLabel::parse(bad), ParseError) << bad;
    }
}

TEST(NegativeMeasurements, PrWeightsAndResponses) {
    ClassicalModel m = build_negative_measurements(pr_box());
    ASSERT_EQ(m.state.spaces()[0].size(), 4u);
    EXPECT_EQ(m.state.tuples().size(), 16u);
    const int l11 = label_index(m.state.spaces()[0], HiddenLabel::pair(0, 0));
    std::vector<int> t{l11, l11};
    EXPECT_EQ(m.state(t), ratio(1, 8));
    for (int x = 0; x < 2; ++x) {
        const int l = label_index(m.state.spaces()[0], HiddenLabel::pair(0, x));
        EXPECT_EQ(m.responses[0](1, x, l), Rational(-1));
        EXPECT_EQ(m.responses[0](0, x, l), Rational(2));
    }
    EXPECT_EQ(evaluate(m), pr_box());
}

TEST(NegativeMeasurements, RejectsBadInput) {
    Scenario s({2, 2}, {2, 2});
    std::vector<Rational> v(16, Rational(0));
    for (int xi = 0; xi < 4; ++xi) {
        v[static_cast<std::size_t>(xi * 4 + (xi % 2) * 2)] = 1;  // party 1 copies x2
    }
    EXPECT_THROW(build_negative_measurements(Box(s, v)), SignallingError);
    EXPECT_THROW(build_negative_state(Box(s, v)), SignallingError);
}

TEST(NegativeState, PrWeights) {
    ClassicalModel m = build_negative_state(pr_box());
    const auto &sp = m.state.spaces()[0];
    ASSERT_EQ(sp.size(), 5u);
    const int xi = label_index(sp, HiddenLabel::xi());
    const int l11 = label_index(sp, HiddenLabel::pair(0, 0));
    std::vector<int> both_xi{xi, xi}, mixed{xi, l11};
    EXPECT_EQ(m.state(both_xi), Rational(1));
    EXPECT_EQ(m.state(mixed), ratio(-1, 2));
    Rational total = 0;
    for (const auto &w : m.state.weights()) {
        total += w;
    }
    EXPECT_EQ(total, 1);
    for (const auto &r : m.responses) {
        for (const auto &e : r.entries()) {
            EXPECT_TRUE(e == 0 || e == 1);
        }
    }
    EXPECT_EQ(evaluate(m), pr_box());
}

TEST(NegativeState, WeightAtXiPairIsInOneMinusXTimes) {
    Scenario s({2, 3}, {3, 2});
    Box b = random_nonsignalling_box(s, 4);
    ClassicalModel m = build_negative_state(b);
    EXPECT_EQ(evaluate(m), b);
    const int xi0 = label_index(m.state.spaces()[0], HiddenLabel::xi());
    const int xi1 = label_index(m.state.spaces()[1], HiddenLabel::xi());
    std::vector<int> t{xi0, xi1};
    EXPECT_EQ(m.state(t), Rational((1 - 3) * (1 - 2)));
}

TEST(Compress, SizesAndRoundTrip) {
    for (const Box &b : {pr_box(), tsirelson_box()}) {
        for (auto build : {build_negative_measurements, build_negative_state}) {
            ClassicalModel m = build(b);
            ClassicalModel c = compress(m);
            EXPECT_TRUE(c.compressed);
            EXPECT_EQ(c.state.spaces()[0].size(), 3u);
            EXPECT_EQ(c.state.tuples().size(), 9u);
            EXPECT_EQ(c.state.spaces()[0].back(), HiddenLabel::eta());
            EXPECT_EQ(evaluate(c), b);
            ClassicalModel again = compress(c);
            EXPECT_EQ(again.state.weights().size(), c.state.weights().size());
        }
    }
}

TEST(Compress, EtaWeightIsSumOfMergedWeights) {
    ClassicalModel m = build_negative_state(pr_box());
    ClassicalModel c = compress(m);
    const auto &sp = m.state.spaces()[0];
    std::vector<int> merged{label_index(sp, HiddenLabel::pair(1, 0)), label_index(sp, HiddenLabel::pair(1, 1)),
                            label_index(sp, HiddenLabel::xi())};
    Rational expected = 0;
    for (int i : merged) {
        for (int j : merged) {
            std::vector<int> t{i, j};
            expected += m.state(t);
        }
    }
    const int eta = label_index(c.state.spaces()[0], HiddenLabel::eta());
    std::vector<int> te{eta, eta};
    EXPECT_EQ(c.state(te), expected);
}

TEST(Compress, SingleOutcomePartyCollapsesToEta) {
    Scenario s({1, 2}, {3, 2});
    Box b = uniform_box(s);
    ClassicalModel c = compress(build_negative_measurements(b));
    ASSERT_EQ(c.state.spaces()[0].size(), 1u);
    EXPECT_EQ(c.state.spaces()[0][0], HiddenLabel::eta());
    EXPECT_EQ(c.state.spaces()[1].size(), 3u);
    EXPECT_EQ(evaluate(c), b);
}

TEST(Evaluate, PointMassGivesProductBox) {
    Scenario s({2, 2}, {2, 1});
    LabelSpace one{HiddenLabel::pair(0, 0)};
    QuasiState state({one, one}, {Rational(1)});
    ResponseTable r0(2, 2, 1, {ratio(1, 3), ratio(2, 3), Rational(1), Rational(0)});
    ResponseTable r1(2, 1, 1, {ratio(1, 4), ratio(3, 4)});
    ClassicalModel m{s, state, {r0, r1}, ModelKind::NegativeMeasurements, false};
    Box b = evaluate(m);
    std::vector<int> a{0, 1}, x{0, 0};
    EXPECT_EQ(b(a, x), ratio(1, 3) * ratio(3, 4));
    std::vector<int> x2{1, 0};
    EXPECT_EQ(b(a, x2), Rational(1) * ratio(3, 4));
}

TEST(Negativity, Signatures) {
    for (const Box &b : {pr_box(), uniform_box(Scenario({2, 2}, {2, 2}))}) {
        Negativity n1 = negativity(build_negative_measurements(b));
        EXPECT_EQ(n1.state, 0);
        EXPECT_GE(n1.response, 1);
        Negativity n2 = negativity(build_negative_state(b));
        EXPECT_EQ(n2.response, 0);
        EXPECT_GT(n2.state, 0);
    }
}

TEST(Sampler, DeterministicPerSeed) {
    ClassicalModel m = build_negative_measurements(pr_box());
    std::vector<int> x{0, 1};
    auto a = sample_signed(m, x, 2000, 11);
    auto b = sample_signed(m, x, 2000, 11);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.standard_error, b.standard_error);
    EXPECT_THROW(sample_signed(m, x, 0, 1), ArgumentError);
}

TEST(Sampler, PointMassIsExactAfterOneShot) {
    Scenario s({2}, {1});
    LabelSpace one{HiddenLabel::pair(0, 0)};
    ClassicalModel m{s, QuasiState({one}, {Rational(1)}), {ResponseTable(2, 1, 1, {Rational(0), Rational(1)})},
                     ModelKind::NegativeState, false};
    std::vector<int> x{0};
    auto est = sample_signed(m, x, 1, 3);
    EXPECT_EQ(est.mean, (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(est.standard_error, (std::vector<double>{0.0, 0.0}));
}

TEST(Sampler, PrWithinFourSigma) {
    Box pr = pr_box();
    ClassicalModel m = build_negative_measurements(pr);
    std::vector<int> x{0, 0};
    auto est = sample_signed(m, x, 100000, 7);
    for (std::size_t ai = 0; ai < 4; ++ai) {
        const double exact = to_double(pr.at(ai, 0));
        EXPECT_LE(std::abs(est.mean[ai] - exact), 4 * est.standard_error[ai] + 1e-12);
    }
}

TEST(ClassicalModel, StructuralChecks) {
    LabelSpace one{HiddenLabel::xi()};
    EXPECT_THROW(QuasiState({one}, {ratio(1, 2)}), StructuralError);
    EXPECT_THROW(ResponseTable(2, 1, 1, {ratio(1, 2), ratio(1, 3)}), StructuralError);
    EXPECT_THROW(parse_model_kind("neg"), ParseError);
}
