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

#include <cstdint>

#include "nsbox/box.hpp"
#include "nsbox/locality.hpp"

namespace nsbox {

/// Two parties, two inputs, two outcomes: 1/2 when (a1-1) xor (a2-1) = (x1-1)(x2-1), else 0.
Box pr_box();

/// Maximal quantum CHSH correlations from a maximally entangled qubit pair:
/// p(a1,a2|x1,x2) = (1 + s E)/4 with s = +1 iff a1 = a2, E = 1/sqrt2 except -1/sqrt2 at (2,2).
/// Irrational entries are stored as rationals within 1e-12.
Box tsirelson_box();

Box uniform_box(const Scenario &scenario);

/// Point mass on the strategy's outcomes. Throws ArgumentError on out-of-range outcomes.
Box deterministic_box(const Scenario &scenario, const DeterministicStrategy &strategy);

/// Random draw of one product deterministic strategy (no enumeration).
DeterministicStrategy random_strategy(const Scenario &scenario, std::uint64_t seed);

/// Convex mixture of between 1 and 20 random deterministic boxes with small-denominator weights.
Box random_local_box(const Scenario &scenario, std::uint64_t seed);

/// lambda * (random local box) + (1 - lambda) * reference. The reference is a PR box embedded on
/// two random parties that both have at least two inputs and outcomes (other parties fixed to
/// outcome 1), or another random local box when no such pair exists.
Box random_nonsignalling_box(const Scenario &scenario, std::uint64_t seed);

}  // namespace nsbox
