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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nsbox/box.hpp"

namespace nsbox {

/// Product deterministic strategy: outcomes[k][x] is party k's (0-based) outcome on input x.
struct DeterministicStrategy {
    std::vector<std::vector<int>> outcomes;

    int outcome(int party, int input) const {
        return outcomes[static_cast<std::size_t>(party)][static_cast<std::size_t>(input)];
    }
    /// Per-party outcome lists joined by ';', 1-based: "1,2;2,2".
    std::string to_string() const;

    bool operator==(const DeterministicStrategy &) const = default;
};

inline constexpr double kDefaultVertexCap = 1e6;
inline constexpr double kDefaultTolerance = 1e-9;

/// Number of product deterministic strategies, prod_k A_k^{X_k} (as a double; may be huge).
double vertex_count(const Scenario &scenario);

/// All product deterministic strategies in MixedRadix order over (party, input) digits.
/// Throws SizeError if there are more than `cap`.
std::vector<DeterministicStrategy> enumerate_vertices(const Scenario &scenario, double cap = kDefaultVertexCap);

/// Linear functional on boxes with one coefficient per (a, x), laid out like QuasiBox::values().
struct BellFunctional {
    Scenario scenario;
    std::vector<Rational> coefficients;

    const Rational &at(std::size_t output_index, std::size_t input_index) const {
        return coefficients[input_index * scenario.output_tuples().size() + output_index];
    }
};

/// sum_{a,x} f(a,x) q(a|x). Throws StructuralError on a scenario mismatch.
Rational bell_value(const QuasiBox &box, const BellFunctional &functional);

/// Value of the functional on a deterministic strategy.
Rational bell_value(const DeterministicStrategy &strategy, const BellFunctional &functional);

/// Maximum of the functional over all product deterministic strategies.
Rational local_bound(const BellFunctional &functional, double cap = kDefaultVertexCap);

/// sum_{x1,x2} (-1)^{(x1-1)(x2-1)} (P(a1 = a2) - P(a1 != a2)) on the (2,2,2,2) scenario.
BellFunctional chsh_functional();

struct LocalCertificate {
    std::vector<std::pair<DeterministicStrategy, Rational>> weights;
};

struct NonLocalCertificate {
    BellFunctional functional;
    Rational local_bound;
    Rational box_value;
    /// Optimal value of the float LP that proposed the functional; 0 when it came from a candidate.
    double lp_margin = 0.0;
};

using LocalityCertificate = std::variant<LocalCertificate, NonLocalCertificate>;

inline bool is_local_verdict(const LocalityCertificate &c) {
    return std::holds_alternative<LocalCertificate>(c);
}

struct LocalityOptions {
    double tolerance = kDefaultTolerance;
    double vertex_cap = kDefaultVertexCap;
    std::int64_t max_denominator = 1000000000;
    /// Functionals tried before the LP; the first one that separates exactly becomes the certificate.
    std::vector<BellFunctional> candidates;
};

/// Exact recheck: Local weights are non-negative, sum to 1 and mix to the box; NonLocal bound
/// and value are recomputed and box_value > local_bound.
bool verify_certificate(const QuasiBox &box, const LocalityCertificate &certificate,
                        double cap = kDefaultVertexCap);

/// Exact NonLocal certificate for a given functional, whether or not it separates.
NonLocalCertificate certify_with(const QuasiBox &box, const BellFunctional &functional,
                                 double cap = kDefaultVertexCap);

/// Decides membership in the local polytope. The LP runs in floating point over canonical marginal
/// coordinates; its primal weights or dual functional are rationalized and checked exactly.
/// Throws SignallingError for signalling input, SizeError past the vertex cap, and UndecidedError
/// when neither verdict survives exact verification.
LocalityCertificate is_local(const QuasiBox &box, const LocalityOptions &options = {});

}  // namespace nsbox
