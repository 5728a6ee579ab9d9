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
#include "nsbox/errors.hpp"
#include "nsbox/gallery.hpp"
#include "nsbox/locality.hpp"

using namespace nsbox;

TEST(Vertices, Counts) {
    EXPECT_EQ(enumerate_vertices(Scenario({2, 2}, {2, 2})).size(), 16u);
    EXPECT_EQ(enumerate_vertices(Scenario({3}, {1})).size(), 3u);
    EXPECT_EQ(enumerate_vertices(Scenario({2, 2, 2}, {2, 2, 2})).size(), 64u);
    EXPECT_DOUBLE_EQ(vertex_count(Scenario({3, 2}, {2, 3})), 9.0 * 8.0);
}

TEST(Vertices, CapExceeded) {
    try {
        enumerate_vertices(Scenario({2, 2}, {2, 2}), 10);
        FAIL();
    } catch (const SizeError &e) {
        EXPECT_DOUBLE_EQ(e.count(), 16.0);
    }
}

TEST(BellValue, Chsh) {
    const BellFunctional chsh = chsh_functional();
    EXPECT_EQ(bell_value(pr_box(), chsh), 4);
    EXPECT_EQ(local_bound(chsh), 2);
    BellFunctional zero{chsh.scenario, std::vector<Rational>(16, Rational(0))};
    EXPECT_EQ(bell_value(tsirelson_box(), zero), 0);
    Rational best = -100;
    for (const auto &v : enumerate_vertices(chsh.scenario)) {
        Rational val = bell_value(v, chsh);
        EXPECT_EQ(val, bell_value(deterministic_box(chsh.scenario, v), chsh));
        best = val > best ? val : best;
    }
    EXPECT_EQ(best, 2);
}

TEST(IsLocal, PrNonLocal) {
    Box pr = pr_box();
    auto cert = is_local(pr);
    ASSERT_FALSE(is_local_verdict(cert));
    const auto &nl = std::get<NonLocalCertificate>(cert);
    EXPECT_GT(nl.box_value, nl.local_bound);
    EXPECT_TRUE(verify_certificate(pr, cert));

    LocalityOptions opts;
    opts.candidates.push_back(chsh_functional());
    auto chsh_cert = is_local(pr, opts);
    ASSERT_FALSE(is_local_verdict(chsh_cert));
    EXPECT_EQ(std::get<NonLocalCertificate>(chsh_cert).box_value, 4);
    EXPECT_EQ(std::get<NonLocalCertificate>(chsh_cert).local_bound, 2);
}

TEST(IsLocal, TsirelsonNonLocal) {
    Box t = tsirelson_box();
    LocalityOptions opts;
    opts.candidates.push_back(chsh_functional());
    auto cert = is_local(t, opts);
    ASSERT_FALSE(is_local_verdict(cert));
    const auto &nl = std::get<NonLocalCertificate>(cert);
    EXPECT_NEAR(to_double(nl.box_value), 2 * std::sqrt(2.0), 1e-9);
    EXPECT_GT(nl.box_value, 2);

    auto lp_cert = is_local(t);
    ASSERT_FALSE(is_local_verdict(lp_cert));
    EXPECT_TRUE(verify_certificate(t, lp_cert));
}

TEST(IsLocal, VerticesAndUniformLocal) {
    Scenario s({2, 2}, {2, 2});
    for (const auto &v : enumerate_vertices(s)) {
        Box b = deterministic_box(s, v);
        auto cert = is_local(b);
        ASSERT_TRUE(is_local_verdict(cert));
        const auto &w = std::get<LocalCertificate>(cert).weights;
        ASSERT_EQ(w.size(), 1u);
        EXPECT_EQ(w[0].first, v);
        EXPECT_EQ(w[0].second, 1);
    }
    Box u = uniform_box(s);
    auto cert = is_local(u);
    ASSERT_TRUE(is_local_verdict(cert));
    EXPECT_TRUE(verify_certificate(u, cert));
}

TEST(IsLocal, RandomLocalBoxes) {
    const std::vector<Scenario> scenarios{Scenario({2, 2}, {2, 2}), Scenario({3, 2}, {2, 3}),
                                          Scenario({2, 2, 2}, {2, 2, 2})};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Scenario &s = scenarios[seed % scenarios.size()];
        Box b = random_local_box(s, seed);
        auto cert = is_local(b);
        ASSERT_TRUE(is_local_verdict(cert)) << "seed " << seed;
        EXPECT_TRUE(verify_certificate(b, cert));
    }
}

TEST(IsLocal, EveryCorpusVerdictVerifiesExactly) {
    for (const auto &[name, box] : fixtures::corpus()) {
        auto cert = is_local(box);
        EXPECT_TRUE(verify_certificate(box, cert)) << name;
    }
}

TEST(IsLocal, ForgedCertificatesRejected) {
    Box pr = pr_box();
    LocalCertificate fake;
    fake.weights.push_back({DeterministicStrategy{{{0, 0}, {0, 0}}}, Rational(1)});
    EXPECT_FALSE(verify_certificate(pr, LocalityCertificate(fake)));
    NonLocalCertificate wrong = certify_with(uniform_box(pr.scenario()), chsh_functional());
    EXPECT_FALSE(verify_certificate(uniform_box(pr.scenario()), LocalityCertificate(wrong)));
}

TEST(IsLocal, RejectsSignallingBox) {
    Scenario s({2, 2}, {2, 2});
    std::vector<Rational> v(16, Rational(0));
    for (int xi = 0; xi < 4; ++xi) {
        v[static_cast<std::size_t>(xi * 4 + (xi % 2) * 2)] = 1;
    }
    EXPECT_THROW(is_local(Box(s, v)), SignallingError);
}
