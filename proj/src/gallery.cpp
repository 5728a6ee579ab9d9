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

#include "nsbox/gallery.hpp"

#include <algorithm>
#include <random>

namespace nsbox {

Box pr_box() {
    Scenario s({2, 2}, {2, 2});
    std::vector<Rational> v(16);
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            for (int a1 = 0; a1 < 2; ++a1) {
                for (int a2 = 0; a2 < 2; ++a2) {
                    const bool hit = (a1 ^ a2) == (x1 & x2);
                    v[static_cast<std::size_t>((x1 * 2 + x2) * 4 + a1 * 2 + a2)] = hit ? ratio(1, 2) : Rational(0);
                }
            }
        }
    }
    return Box(s, std::move(v));
}

Box tsirelson_box() {
    // (2 + sqrt2)/8 with sqrt2 ~ 665857/470832 (error 1.6e-12); the partner entry is 1/2 minus it,
    // so every input column sums to exactly 1.
    const Rational same_high = ratio(1607521, 3766656);
    const Rational same_low = ratio(1, 2) - same_high;
    Scenario s({2, 2}, {2, 2});
    std::vector<Rational> v(16);
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            const bool anti = x1 == 1 && x2 == 1;
            for (int a1 = 0; a1 < 2; ++a1) {
                for (int a2 = 0; a2 < 2; ++a2) {
                    const bool favoured = (a1 == a2) != anti;
                    v[static_cast<std::size_t>((x1 * 2 + x2) * 4 + a1 * 2 + a2)] = favoured ? same_high : same_low;
                }
            }
        }
    }
    return Box(s, std::move(v));
}

Box uniform_box(const Scenario &scenario) {
    const std::size_t na = scenario.output_tuples().size();
    return Box(scenario, std::vector<Rational>(na * scenario.input_tuples().size(),
                                               ratio(1, static_cast<long>(na))));
}

Box deterministic_box(const Scenario &scenario, const DeterministicStrategy &strategy) {
    const int n = scenario.parties();
    if (static_cast<int>(strategy.outcomes.size()) != n) {
        throw ArgumentError("strategy needs one assignment per party");
    }
    for (int k = 0; k < n; ++k) {
        const auto &f = strategy.outcomes[static_cast<std::size_t>(k)];
        if (static_cast<int>(f.size()) != scenario.inputs(k)) {
            throw ArgumentError("strategy for party " + std::to_string(k + 1) + " needs one outcome per input");
        }
        for (int a : f) {
            if (a < 0 || a >= scenario.outputs(k)) {
                throw ArgumentError("strategy outcome out of range for party " + std::to_string(k + 1));
            }
        }
    }
    const std::size_t na = scenario.output_tuples().size();
    std::vector<Rational> v(na * scenario.input_tuples().size(), Rational(0));
    std::vector<int> x(static_cast<std::size_t>(n), 0), a(static_cast<std::size_t>(n));
    std::size_t xi = 0;
    do {
        for (int k = 0; k < n; ++k) {
            a[static_cast<std::size_t>(k)] = strategy.outcome(k, x[static_cast<std::size_t>(k)]);
        }
        v[xi * na + scenario.output_tuples().index(a)] = 1;
        ++xi;
    } while (scenario.input_tuples().next(x));
    return Box(scenario, std::move(v));
}

namespace {

DeterministicStrategy draw_strategy(const Scenario &scenario, std::mt19937_64 &rng) {
    DeterministicStrategy strategy;
    for (int k = 0; k < scenario.parties(); ++k) {
        std::uniform_int_distribution<int> outcome(0, scenario.outputs(k) - 1);
        std::vector<int> f(static_cast<std::size_t>(scenario.inputs(k)));
        for (auto &a : f) {
            a = outcome(rng);
        }
        strategy.outcomes.push_back(std::move(f));
    }
    return strategy;
}

Box draw_local(const Scenario &scenario, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> count(1, 20);
    std::uniform_int_distribution<int> weight(1, 100);
    const int terms = count(rng);
    std::vector<DeterministicStrategy> strategies;
    std::vector<int> weights;
    int total = 0;
    for (int t = 0; t < terms; ++t) {
        strategies.push_back(draw_strategy(scenario, rng));
        weights.push_back(weight(rng));
        total += weights.back();
    }
    const std::size_t size = scenario.output_tuples().size() * scenario.input_tuples().size();
    std::vector<Rational> v(size, Rational(0));
    for (int t = 0; t < terms; ++t) {
        const Box vertex = deterministic_box(scenario, strategies[static_cast<std::size_t>(t)]);
        const Rational w = ratio(weights[static_cast<std::size_t>(t)], total);
        for (std::size_t i = 0; i < size; ++i) {
            if (sgn(vertex.values()[i]) != 0) {
                v[i] += w;
            }
        }
    }
    return Box(scenario, std::move(v));
}

// PR correlations between parties i and j on outcomes {1,2}: a_i xor a_j = [x_i > 0][x_j > 0].
// Everybody else always answers outcome 1.
Box embedded_pr(const Scenario &scenario, int i, int j) {
    const int n = scenario.parties();
    const std::size_t na = scenario.output_tuples().size();
    std::vector<Rational> v(na * scenario.input_tuples().size(), Rational(0));
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::size_t xi = 0;
    do {
        const int target = (x[static_cast<std::size_t>(i)] > 0 && x[static_cast<std::size_t>(j)] > 0) ? 1 : 0;
        std::vector<int> a(static_cast<std::size_t>(n), 0);
        for (int ai = 0; ai < 2; ++ai) {
            a[static_cast<std::size_t>(i)] = ai;
            a[static_cast<std::size_t>(j)] = ai ^ target;
            v[xi * na + scenario.output_tuples().index(a)] = ratio(1, 2);
        }
        ++xi;
    } while (scenario.input_tuples().next(x));
    return Box(scenario, std::move(v));
}

}  // namespace

DeterministicStrategy random_strategy(const Scenario &scenario, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return draw_strategy(scenario, rng);
}

Box random_local_box(const Scenario &scenario, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return draw_local(scenario, rng);
}

Box random_nonsignalling_box(const Scenario &scenario, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Box local = draw_local(scenario, rng);

    std::vector<int> eligible;
    for (int k = 0; k < scenario.parties(); ++k) {
        if (scenario.outputs(k) >= 2 && scenario.inputs(k) >= 2) {
            eligible.push_back(k);
        }
    }
    Box reference;
    if (eligible.size() >= 2) {
        std::shuffle(eligible.begin(), eligible.end(), rng);
        const int i = std::min(eligible[0], eligible[1]);
        const int j = std::max(eligible[0], eligible[1]);
        reference = embedded_pr(scenario, i, j);
    } else {
        reference = draw_local(scenario, rng);
    }

    // Any mixing weight in [0, 1] keeps the mixture non-negative.
    std::uniform_int_distribution<int> lambda_num(0, 100);
    const Rational lambda = ratio(lambda_num(rng), 100);
    std::vector<Rational> v(local.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = lambda * local.values()[i] + (1 - lambda) * reference.values()[i];
    }
    return Box(scenario, std::move(v));
}

}  // namespace nsbox
